// Radial side of a subcritical channel. Everything here is closed-form on
// top of K_{i nu} / H_{i nu}; the work is keeping the formulas inside the
// double range at any tower depth:
//   - tower levels and norms assemble in log space once exponents get large,
//   - S(k) on the real axis uses sinh factors pre-scaled by e^{-nu pi/2},
//   - the continuation S(k in C) collapses to a Moebius map of a single
//     exponential, i (z - t)/(1 - t z) with z = e^{-2 i nu log(k/kappa*)}
//     and t = e^{-nu pi}, evaluated in whichever of z, 1/z stays bounded.
#include "dsi/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>

#include "dsi/imag_bessel.hpp"
#include "dsi/numerics.hpp"

namespace dsi {
namespace {

constexpr double pi_d = 3.141592653589793238462643383279502884;
constexpr double log_two = 0.693147180559945309417232121458176568;

// log(sinh x) for x > 0, immune to sinh overflow at large x.
double log_sinh(double x) {
    if (x > 20.0) return x - log_two + std::log1p(-std::exp(-2.0 * x));
    return std::log(std::sinh(x));
}

void require_positive(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

double critical_lambda(int n) {
    if (n < 3) throw std::invalid_argument("radial channel needs n >= 3");
    const double d = 0.5 * static_cast<double>(n - 3);
    return -d * d;
}

ChannelParams::ChannelParams(int n_, double lambda_, double kappa_star_)
    : n(n_), lambda(lambda_), nu(0.0), kappa_star(kappa_star_) {
    const double lc = critical_lambda(n_);
    if (!std::isfinite(lambda_)) throw std::invalid_argument("lambda must be finite");
    if (!(lambda_ < lc)) {
        throw std::domain_error("channel is not subcritical: need lambda < -(n-3)^2/4");
    }
    require_positive(kappa_star_, "kappa_star");
    nu = std::sqrt(lc - lambda_);
}

ChannelParams ChannelParams::from_nu(int n_, double nu_, double kappa_star_) {
    require_positive(nu_, "nu");
    const double lc = critical_lambda(n_);
    if (lc - nu_ * nu_ == lc) {
        throw std::domain_error("nu too small: lambda_c - nu^2 rounds back to lambda_c");
    }
    ChannelParams p(n_, lc - nu_ * nu_, kappa_star_);
    p.nu = nu_;  // keep the caller's value exact; lambda absorbs the rounding
    return p;
}

BoundState bound_state(const ChannelParams& p, int ell) {
    // The exponent grows like |ell| pi/nu, so double rounding there would
    // cost |exponent| * eps of relative accuracy in kappa and wobble the
    // consecutive-energy ratios; do the exponent in long double instead,
    // which keeps every representable kappa correctly rounded.
    constexpr long double pi_l = 3.141592653589793238462643383279502884L;
    const long double log_kappa_l =
        logl(static_cast<long double>(p.kappa_star)) -
        static_cast<long double>(ell) * (pi_l / static_cast<long double>(p.nu));
    const double log_kappa = static_cast<double>(log_kappa_l);
    // energy = -kappa^2 must stay a normal double in both directions; past
    // that the level is real but not representable, which callers report
    // rather than receive as a denormal ratio
    if (!(std::fabs(log_kappa) < 354.0)) {
        throw std::range_error("tower level out of double range: |ell| pi/nu too deep");
    }
    const double kappa = static_cast<double>(expl(log_kappa_l));
    const double a = pi_d * p.nu;
    const double log_norm = 0.5 * (log_kappa - std::log(p.nu) + log_sinh(a));
    if (log_norm > 709.0) {
        throw std::range_error("bound-state norm exceeds the double range");
    }
    double norm;
    if (a < 700.0 && std::abs(log_kappa) < 600.0) {
        norm = std::sqrt(kappa * (std::sinh(a) / p.nu));
    } else {
        norm = std::exp(log_norm);  // ~1e-13 relative from the log assembly
    }
    return {ell, kappa, -kappa * kappa, norm};
}

double bound_radial_wavefunction(const ChannelParams& p, double kappa, double r) {
    require_positive(kappa, "kappa");
    require_positive(r, "r");
    const double x = kappa * r;
    const double a = pi_d * p.nu;
    const double log_norm = 0.5 * (std::log(kappa) - std::log(p.nu) + log_sinh(a));
    if (x <= 600.0 && a < 700.0 && log_norm < 300.0) {
        const double norm = std::sqrt(kappa * (std::sinh(a) / p.nu));
        return norm * std::sqrt(2.0 * x / pi_d) * bessel_k_imag(p.nu, x);
    }
    // far tail (or an extreme norm): assemble in log space so the explicit
    // e^{-kappa r} cannot underflow before the prefactors are folded in
    double sign = 1.0;
    double log_mag;
    if (x <= 600.0) {
        const double kv = bessel_k_imag(p.nu, x);
        if (kv == 0.0) return 0.0;
        sign = kv > 0.0 ? 1.0 : -1.0;
        log_mag = log_norm + 0.5 * std::log(2.0 * x / pi_d) + std::log(std::abs(kv));
    } else {
        // past x = nu the Bessel factor is positive, so the log is safe
        log_mag = log_norm + 0.5 * std::log(2.0 * x / pi_d) - x +
                  std::log(bessel_k_imag_scaled(p.nu, x));
    }
    if (log_mag > 709.0) {
        throw std::range_error("wavefunction value exceeds the double range");
    }
    return sign * std::exp(log_mag);
}

ScatteringPoint s_matrix(const ChannelParams& p, double k) {
    require_positive(k, "k");
    // scale both sinh factors by e^{-nu pi/2}: with em = expm1(-nu pi) they
    // become -em/2 and 1 + em/2, finite at any depth and full precision as
    // nu -> 0. The numerator is then i times the conjugate of the
    // denominator, so |S| = 1 holds to rounding by construction.
    const double em = std::expm1(-pi_d * p.nu);
    const double sh = -0.5 * em;
    const double ch = 1.0 + 0.5 * em;
    const double w = p.nu * std::log(k / p.kappa_star);
    const double sw = std::sin(w);
    const double cw = std::cos(w);
    const std::complex<double> num(ch * sw, sh * cw);
    const std::complex<double> den(sh * cw, ch * sw);
    return {k, num / den};
}

std::complex<double> s_matrix_at(const ChannelParams& p, std::complex<double> k) {
    if (!(std::isfinite(k.real()) && std::isfinite(k.imag())) ||
        (k.real() == 0.0 && k.imag() == 0.0)) {
        throw std::invalid_argument("k must be finite and nonzero");
    }
    // Factoring e^{nu pi/2 -+ i w} out of both sinh's leaves the Moebius map
    //   S = i (z - t)/(1 - t z),  z = e^{-2 i w},  t = e^{-nu pi},
    // with poles at z = 1/t, i.e. k = i kappa_ell. |z| = e^{2 nu arg k} can
    // overflow upstairs, so on the upper half plane divide through by z and
    // evaluate in 1/z instead.
    const std::complex<double> w = p.nu * std::log(k / p.kappa_star);
    const double t = std::exp(-pi_d * p.nu);
    const std::complex<double> i_unit(0.0, 1.0);
    if (w.imag() > 0.0) {
        const std::complex<double> zi = std::exp(std::complex<double>(0.0, 2.0) * w);
        return i_unit * (1.0 - t * zi) / (zi - t);
    }
    const std::complex<double> z = std::exp(std::complex<double>(0.0, -2.0) * w);
    return i_unit * (z - t) / (1.0 - t * z);
}

std::complex<double> scattering_radial_wavefunction(const ChannelParams& p,
                                                    double k, double r) {
    require_positive(k, "k");
    require_positive(r, "r");
    const double x = k * r;
    // e^{-+ i (1 + 2 i nu) pi/4} = e^{-+ i pi/4} e^{+- nu pi/2}; the Hankel
    // evaluator caps nu at 20, so e^{nu pi/2} <= e^{10 pi} stays comfortable
    const double ep = std::exp(0.5 * pi_d * p.nu);
    const double c45 = std::sqrt(0.5);
    const std::complex<double> in_phase(c45 * ep, -c45 * ep);
    const std::complex<double> out_phase(c45 / ep, c45 / ep);
    const std::complex<double> s = s_matrix(p, k).s_value;
    const std::complex<double> h1 = hankel_imag(1, p.nu, x);
    const std::complex<double> h2 = hankel_imag(2, p.nu, x);
    return std::sqrt(0.5 * pi_d * x) * (in_phase * h2 + s * out_phase * h1);
}

ResidueCheck residue_check(const ChannelParams& p, int ell) {
    const BoundState b = bound_state(p, ell);
    // i kappa_ell sinh(nu pi)/nu is exactly i |N_kappa|^2
    const std::complex<double> expected(0.0, b.norm * b.norm);
    if (!std::isfinite(expected.imag())) {
        throw std::range_error("residue exceeds the double range");
    }
    // (k - i kappa) S(k) is analytic in a disc reaching the neighbouring
    // tower levels, relative radius e^{pi/nu} - 1; start the Richardson
    // ladder safely inside it
    const double reach = std::expm1(pi_d / p.nu);
    const double t0 = std::min(0.1, 0.25 * reach);
    constexpr int m = 7;
    std::array<double, m> ts{}, re{}, im{};
    const std::complex<double> pole(0.0, b.kappa);
    for (int j = 0; j < m; ++j) {
        const double t = t0 * std::exp2(-j);
        const std::complex<double> kj = pole * (1.0 + t);
        const std::complex<double> v = pole * t * s_matrix_at(p, kj);
        ts[j] = t;
        re[j] = v.real();
        im[j] = v.imag();
    }
    const std::span<const double> tx(ts), rx(re), ix(im);
    const double r_all = extrapolate_to_zero(tx, rx);
    const double i_all = extrapolate_to_zero(tx, ix);
    const double r_head = extrapolate_to_zero(tx.first(m - 1), rx.first(m - 1));
    const double i_head = extrapolate_to_zero(tx.first(m - 1), ix.first(m - 1));
    const double scale = std::hypot(r_all, i_all);
    const double drift = std::hypot(r_all - r_head, i_all - i_head);
    if (!std::isfinite(scale) || !(drift <= 1e-8 * scale)) {
        throw std::runtime_error("residue extrapolation did not converge");
    }
    return {{r_all, i_all}, expected};
}

}  // namespace dsi
