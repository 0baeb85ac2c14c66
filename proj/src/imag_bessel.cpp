#include "dsi/imag_bessel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "dsi/numerics.hpp"

namespace dsi {
namespace {

using cld = std::complex<long double>;

constexpr long double pi_l = 3.14159265358979323846264338327950288L;

// log Gamma(z) off the nonpositive real axis: recurrence-shift until
// Re z >= 16, then the Stirling series with Bernoulli terms through B_16
// (relative error ~1e-20 at the shifted point, inside long-double headroom).
cld clgamma(cld z) {
    if (z.imag() == 0.0L && z.real() <= 0.0L)
        throw std::domain_error("clgamma: pole axis");
    cld shift = 0.0L;
    while (z.real() < 16.0L) {
        shift -= std::log(z);
        z += 1.0L;
    }
    // B_{2n} / (2n (2n-1))
    static const long double stirling[] = {
        1.0L / 12.0L,           -1.0L / 360.0L,
        1.0L / 1260.0L,         -1.0L / 1680.0L,
        1.0L / 1188.0L,         -691.0L / 360360.0L,
        1.0L / 156.0L,          -3617.0L / 122400.0L,
    };
    const cld w = z;
    cld sum = (w - 0.5L) * std::log(w) - w + 0.5L * std::log(2.0L * pi_l);
    const cld w2 = w * w;
    cld wp = w;
    for (long double c : stirling) {
        sum += c / wp;
        wp *= w2;
    }
    return sum + shift;
}

// ---------------------------------------------------------------------------
// K_{i nu}(x)
// ---------------------------------------------------------------------------

// Power series about x = 0:
//   K_{i nu}(x) = -pi / sinh(nu pi) * Im[ (x/2)^{i nu} sum_k c_k (x^2/4)^k ],
//   c_0 = 1 / Gamma(1 + i nu),  c_k = c_{k-1} / (k (k + i nu)).
// The Im[] extraction cancels like e^{2x - nu pi}, so this route is kept to
// x <= nu pi/2 + O(1) where the loss stays within long-double headroom.
long double k_series(long double nu, long double x) {
    const cld inu(0.0L, nu);
    const cld c0 = std::exp(-clgamma(1.0L + inu));
    const long double rho = x * x / 4.0L;
    cld term = c0;
    cld sum = c0;
    for (int k = 1; k < 600; ++k) {
        term *= rho / (cld((long double)k) * ((long double)k + inu));
        sum += term;
        if (std::abs(term) < 1e-24L * std::abs(sum)) break;
    }
    // (x/2)^{i nu} = exp(i nu log(x/2))
    const long double phase = nu * std::log(x / 2.0L);
    const cld osc(std::cos(phase), std::sin(phase));
    const long double im = (osc * sum).imag();
    return -pi_l / std::sinh(nu * pi_l) * im;
}

// Integral representation K_{i nu}(x) = int_0^inf e^{-x cosh t} cos(nu t) dt
// on Gauss-Legendre panels, truncated where the integrand has decayed by
// e^{-60} against its t = 0 value. Computes the scaled form e^x K: the
// integrand e^{-x(cosh t - 1)} starts at 1, so panel sums never underflow.
long double k_quadrature_scaled(long double nu, long double x) {
    const long double big = 60.0L;
    const long double t_max = std::acosh(1.0L + big / x);
    // resolve the cos(nu t) oscillation and keep a floor of 16 panels for
    // the cosh decay profile
    int panels = (int)std::ceil(t_max * (nu + 1.0L) / (pi_l / 2.0L));
    if (panels < 16) panels = 16;
    auto f = [&](long double t) {
        return std::exp(-x * (std::cosh(t) - 1.0L)) * std::cos(nu * t);
    };
    return gl_composite(f, 0.0L, t_max, panels, 32);
}

// Large-argument expansion  K_{i nu}(x) ~ sqrt(pi/(2x)) e^{-x} sum a_k / x^k
// with a_k = a_{k-1} (-4 nu^2 - (2k-1)^2) / (8k); valid once x dominates
// nu^2 so the terms decay well past the target accuracy.
long double k_asymptotic_scaled(long double nu, long double x) {
    long double a = 1.0L;
    long double sum = 1.0L;
    long double prev = 1.0L;
    for (int k = 1; k < 200; ++k) {
        a *= (-4.0L * nu * nu - (2.0L * k - 1.0L) * (2.0L * k - 1.0L)) /
             (8.0L * k);
        const long double term = a / std::pow(x, (long double)k);
        if (std::abs(term) > std::abs(prev)) break;  // divergent tail reached
        sum += term;
        prev = term;
        if (std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    return std::sqrt(pi_l / (2.0L * x)) * sum;
}

// Route selection shared by the plain and scaled entry points; returns the
// scaled value e^x K_{i nu}(x). Edges were fixed by mapping each route's
// relative error against 40-digit reference values over the whole domain:
// the series loses ~e^{2(x - nu pi/2)} with an extra e^{~0.3 nu} penalty, so
// its safe edge tilts as 1.2 nu + 6; the integral route is clean everywhere
// above that; the large-x expansion reaches 1e-11 by x ~ 1.5 nu^2.
long double k_scaled_impl(long double nu, long double x) {
    const long double series_edge = 1.2L * nu + 6.0L;
    const long double asym_edge = std::max(45.0L, 1.5L * nu * nu + 15.0L);
    if (x <= series_edge) return std::exp(x) * k_series(nu, x);
    if (x < asym_edge) return k_quadrature_scaled(nu, x);
    return k_asymptotic_scaled(nu, x);
}

void check_k_domain(double nu, double x) {
    if (!(nu > 0.0) || nu > 30.0)
        throw std::domain_error("bessel_k_imag: nu must lie in (0, 30], got " +
                                std::to_string(nu));
    if (!(x > 0.0))
        throw std::domain_error("bessel_k_imag: x must be positive, got " +
                                std::to_string(x));
}

// ---------------------------------------------------------------------------
// Hankel functions of general complex order
// ---------------------------------------------------------------------------

// J_mu(x) by power series: (x/2)^mu sum_k (-x^2/4)^k / (k! Gamma(k+1+mu)).
// Alternating, cancels like e^x; restricted to x <= 19 where the loss
// (~1e8 eps_80) stays below the 1e-11 floor.
cld j_series(cld mu, long double x) {
    const cld c0 = std::exp(-clgamma(mu + 1.0L));
    const long double rho = x * x / 4.0L;
    cld term = c0;
    cld sum = c0;
    for (int k = 1; k < 400; ++k) {
        term *= -rho / (cld((long double)k) * ((long double)k + mu));
        sum += term;
        if (std::abs(term) < 1e-24L * std::abs(sum)) break;
    }
    return std::exp(mu * std::log(x / 2.0L)) * sum;
}

// J_mu(x) via the Bessel angle integral (valid for Re mu > -1, x > 0):
//   J_mu(x) = (1/pi) int_0^pi cos(x sin th - mu th) dth
//           - sin(mu pi)/pi int_0^inf e^{-x sinh t - mu t} dt.
// Panel widths track the oscillation rate x + |mu|. The cos of a complex
// argument grows like e^{|Im mu| pi}, so this route loses ~e^{nu pi/2}
// against the result size; certified for |Im mu| <= 12.
cld j_angle(cld mu, long double x) {
    const long double mu_mag = std::abs(mu);

    const int p1 = (int)std::ceil(2.0L * (x + mu_mag + 2.0L)) + 4;
    auto f1 = [&](long double th) {
        return std::cos(cld(x * std::sin(th), 0.0L) - mu * th);
    };
    const cld first = gl_composite(f1, 0.0L, pi_l, p1, 24) / pi_l;

    // decay scale: x sinh t + Re(mu) t >= 62 at the cut (Re mu >= -1 here)
    long double t_max = std::asinh(64.0L / x);
    for (int it = 0; it < 4; ++it)
        t_max = std::asinh((62.0L + (std::abs(mu.real()) + 1.0L) * t_max) / x);
    int p2 = (int)std::ceil(t_max * (std::abs(mu.imag()) + 1.0L) /
                            (pi_l / 2.0L));
    if (p2 < 8) p2 = 8;
    auto f2 = [&](long double t) {
        return std::exp(cld(-x * std::sinh(t), 0.0L) - mu * t);
    };
    const cld second = gl_composite(f2, 0.0L, t_max, p2, 24);

    return first - std::sin(mu * pi_l) / pi_l * second;
}

// H^(1,2)_mu(x) from J_{+-mu}: H1 = (J_{-mu} - e^{-i mu pi} J_mu)/(i sin mu pi),
// H2 = (e^{+i mu pi} J_mu - J_{-mu})/(i sin mu pi). For mu = i nu the
// denominator is ~e^{nu pi}, matching the e^{+-nu pi/2} scale of H.
cld hankel_from_j(int kind, cld mu, long double x, bool use_series) {
    const cld jp = use_series ? j_series(mu, x) : j_angle(mu, x);
    const cld jm = use_series ? j_series(-mu, x) : j_angle(-mu, x);
    const cld i_unit(0.0L, 1.0L);
    const cld s = std::sin(mu * pi_l);
    if (kind == 1)
        return (jm - std::exp(-i_unit * mu * pi_l) * jp) / (i_unit * s);
    return (std::exp(i_unit * mu * pi_l) * jp - jm) / (i_unit * s);
}

// Large-argument expansion, computed per kind so no cancellation enters:
//   H^(1,2)_mu(x) ~ sqrt(2/(pi x)) e^{+-i(x - mu pi/2 - pi/4)}
//                   sum_k (+-i)^k a_k(mu) / x^k,
//   a_k = a_{k-1} (4 mu^2 - (2k-1)^2) / (8k).
cld hankel_asymptotic(int kind, cld mu, long double x) {
    const cld i_unit(0.0L, 1.0L);
    const cld sign = (kind == 1) ? i_unit : -i_unit;
    cld a = 1.0L;
    cld sum = 1.0L;
    cld ik = 1.0L;
    long double prev = 1.0L;
    for (int k = 1; k < 200; ++k) {
        a *= (4.0L * mu * mu - (2.0L * k - 1.0L) * (2.0L * k - 1.0L)) /
             (8.0L * k);
        ik *= sign;
        const cld term = ik * a / std::pow(x, (long double)k);
        if (std::abs(term) > prev) break;
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    const cld omega = cld(x, 0.0L) - mu * (pi_l / 2.0L) - pi_l / 4.0L;
    const cld expo = (kind == 1) ? std::exp(i_unit * omega)
                                 : std::exp(-i_unit * omega);
    return std::sqrt(2.0L / (pi_l * x)) * expo * sum;
}

cld hankel_impl(int kind, cld mu, long double x) {
    const long double m2 = std::norm(mu);
    if (x >= std::max(45.0L, 1.5L * m2 + 10.0L))
        return hankel_asymptotic(kind, mu, x);
    return hankel_from_j(kind, mu, x, /*use_series=*/x <= 19.0L);
}

void check_hankel_domain(int kind, double nu, double x) {
    if (kind != 1 && kind != 2)
        throw std::domain_error("hankel_imag: kind must be 1 or 2, got " +
                                std::to_string(kind));
    if (!(nu > 0.0) || nu > 20.0)
        throw std::domain_error("hankel_imag: nu must lie in (0, 20], got " +
                                std::to_string(nu));
    if (!(x > 0.0) || x > 700.0)
        throw std::domain_error("hankel_imag: x must lie in (0, 700], got " +
                                std::to_string(x));
}

}  // namespace

double bessel_k_imag(const ImagOrderParams& p) {
    check_k_domain(p.nu, p.x);
    if (p.x > 700.0)
        throw std::range_error("bessel_k_imag: e^{-x} underflows for x > 700 "
                               "(x = " + std::to_string(p.x) +
                               "); use bessel_k_imag_scaled");
    const long double scaled = k_scaled_impl(p.nu, p.x);
    return (double)(scaled * std::exp((long double)-p.x));
}

double bessel_k_imag(double nu, double x) { return bessel_k_imag({nu, x}); }

double bessel_k_imag_scaled(const ImagOrderParams& p) {
    check_k_domain(p.nu, p.x);
    if (p.x > 1e9)
        throw std::domain_error("bessel_k_imag_scaled: x too large, got " +
                                std::to_string(p.x));
    return (double)k_scaled_impl(p.nu, p.x);
}

double bessel_k_imag_scaled(double nu, double x) {
    return bessel_k_imag_scaled({nu, x});
}

std::complex<double> hankel_imag(int kind, const ImagOrderParams& p) {
    check_hankel_domain(kind, p.nu, p.x);
    const cld h = hankel_impl(kind, cld(0.0L, p.nu), (long double)p.x);
    return {(double)h.real(), (double)h.imag()};
}

std::complex<double> hankel_imag(int kind, double nu, double x) {
    return hankel_imag(kind, {nu, x});
}

std::complex<double> hankel_imag_deriv(int kind, const ImagOrderParams& p) {
    check_hankel_domain(kind, p.nu, p.x);
    // H'_mu = H_{mu-1} - (mu/x) H_mu, applied at mu = i nu; the companion
    // order i nu - 1 reuses the general-order machinery.
    const cld mu(0.0L, p.nu);
    const long double x = p.x;
    const cld h = hankel_impl(kind, mu, x);
    const cld hm1 = hankel_impl(kind, mu - 1.0L, x);
    const cld d = hm1 - mu / cld(x) * h;
    return {(double)d.real(), (double)d.imag()};
}

std::complex<double> hankel_imag_deriv(int kind, double nu, double x) {
    return hankel_imag_deriv(kind, {nu, x});
}

std::complex<double> log_gamma_one_plus_i(double nu) {
    if (!(nu >= 0.0))
        throw std::domain_error("log_gamma_one_plus_i: nu must be >= 0");
    const cld g = clgamma(cld(1.0L, (long double)nu));
    return {(double)g.real(), (double)g.imag()};
}

}  // namespace dsi
