#include "dsi/angular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dsi/numerics.hpp"

namespace dsi {
namespace {

constexpr double pi_d = 3.14159265358979323846;
constexpr double wedge = pi_d / 3.0;  // interval length

// Normalized boundary data (p, q) = (g, 1)/hypot(g, 1): carries Robin,
// Neumann (1, 0) and Dirichlet (0, 1) ends uniformly and keeps every
// residual combination O(1) even for extreme finite couplings.
struct BoundaryData {
    double p, q;
};

BoundaryData boundary_data(double g) {
    if (std::isnan(g))
        throw std::invalid_argument("coupling must not be NaN");
    if (std::isinf(g)) {
        if (g < 0)
            throw std::invalid_argument(
                "coupling -inf is not in the domain; a Neumann end is +inf");
        return {1.0, 0.0};
    }
    const double h = std::hypot(g, 1.0);
    return {g / h, 1.0 / h};
}

bool is_neumann(double g) { return std::isinf(g) && g > 0; }

// Entire-in-lambda building blocks sigma = sin(s w)/s and c = cos(s w) with
// s = sqrt(lambda), continued through lambda <= 0 (sinh/cosh there); the
// removable point lambda = 0 goes through a short series.
void sigma_c(double lambda, double& sigma, double& c) {
    if (std::fabs(lambda) < 1e-4) {
        const double z = wedge * wedge * lambda;
        double sig = 0.0, cc = 0.0, zm = 1.0, fact = 1.0;
        for (int m = 0; m <= 8; ++m) {
            if (m > 0) fact *= (2 * m - 1) * (2 * m);
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            cc += sgn * zm / fact;
            sig += sgn * zm / (fact * (2 * m + 1));
            zm *= z;
        }
        sigma = wedge * sig;
        c = cc;
        return;
    }
    if (lambda > 0) {
        const double s = std::sqrt(lambda);
        sigma = std::sin(s * wedge) / s;
        c = std::cos(s * wedge);
    } else {
        const double nu = std::sqrt(-lambda);
        sigma = std::sinh(nu * wedge) / nu;
        c = std::cosh(nu * wedge);
    }
}

// cos(sqrt(lambda) th) and sin(sqrt(lambda) th)/sqrt(lambda) continued
// through lambda <= 0; p1 cos_like + q1 sin_like is the solution pinned by
// the theta = 0 condition (value p1, slope q1) for every lambda.
double cos_like(double lambda, double th) {
    const double z = lambda * th * th;
    if (std::fabs(z) < 1e-4) {
        double sum = 0.0, zm = 1.0, fact = 1.0;
        for (int m = 0; m <= 8; ++m) {
            if (m > 0) fact *= (2 * m - 1) * (2 * m);
            sum += ((m % 2 == 0) ? 1.0 : -1.0) * zm / fact;
            zm *= z;
        }
        return sum;
    }
    return lambda > 0 ? std::cos(std::sqrt(lambda) * th)
                      : std::cosh(std::sqrt(-lambda) * th);
}

double sin_like(double lambda, double th) {
    const double z = lambda * th * th;
    if (std::fabs(z) < 1e-4) {
        double sum = 0.0, zm = 1.0, fact = 1.0;
        for (int m = 0; m <= 8; ++m) {
            if (m > 0) fact *= (2 * m - 1) * (2 * m);
            sum += ((m % 2 == 0) ? 1.0 : -1.0) * zm / (fact * (2 * m + 1));
            zm *= z;
        }
        return th * sum;
    }
    if (lambda > 0) {
        const double s = std::sqrt(lambda);
        return std::sin(s * th) / s;
    }
    const double nu = std::sqrt(-lambda);
    return std::sinh(nu * th) / nu;
}

// The residual is the far-end boundary defect of that pinned solution:
//   rho(lambda) = -[(q1 q2 - lambda p1 p2) sigma + (p1 q2 + p2 q1) c],
// so rho(0) = -(pi/3 + g1 + g2)/(h1 h2) and the zero crossing at the origin
// happens exactly on the phase-boundary line.
double residual_pq(double lambda, const BoundaryData& b1,
                   const BoundaryData& b2) {
    double sigma, c;
    sigma_c(lambda, sigma, c);
    return -((b1.q * b2.q - lambda * b1.p * b2.p) * sigma +
             (b1.p * b2.q + b2.p * b1.q) * c);
}

// Negative side scaled by e^{-nu pi/3}: sigma~ = (1 - e^{-2 nu w})/(2 nu),
// c~ = (1 + e^{-2 nu w})/2. Same zeros, same sign, no overflow at any
// depth; expm1 keeps the nu -> 0 limit exact.
double residual_scaled_neg(double nu, const BoundaryData& b1,
                           const BoundaryData& b2) {
    const double em = std::expm1(-2.0 * nu * wedge);  // e^{-2 nu w} - 1
    const double sigma_s = (nu == 0.0) ? wedge : -em / (2.0 * nu);
    const double c_s = 1.0 + 0.5 * em;
    return -((b1.q * b2.q + nu * nu * b1.p * b2.p) * sigma_s +
             (b1.p * b2.q + b2.p * b1.q) * c_s);
}

// One-parameter sweep t: lambda = sign(t) t^2, scaled residual on the
// negative side. Continuous at t = 0.
double sweep_residual(double t, const BoundaryData& b1,
                      const BoundaryData& b2) {
    return t < 0 ? residual_scaled_neg(-t, b1, b2)
                 : residual_pq(t * t, b1, b2);
}

double refine_sweep_root(double a, double b, const BoundaryData& b1,
                         const BoundaryData& b2) {
    return brent_root([&](double t) { return sweep_residual(t, b1, b2); }, a,
                      b, 1e-15);
}

void scan_sweep(double lo, double hi, int steps, const BoundaryData& b1,
                const BoundaryData& b2, std::vector<double>& roots_t) {
    double prev_t = lo;
    double prev_f = sweep_residual(lo, b1, b2);
    if (prev_f == 0.0) roots_t.push_back(lo);
    for (int i = 1; i <= steps; ++i) {
        const double t = lo + (hi - lo) * i / steps;
        const double f = sweep_residual(t, b1, b2);
        if (f == 0.0)
            roots_t.push_back(t);
        else if (prev_f != 0.0 && std::signbit(f) != std::signbit(prev_f))
            roots_t.push_back(refine_sweep_root(prev_t, t, b1, b2));
        prev_t = t;
        prev_f = f;
    }
}

// For two finite attractive ends the subcritical condition rearranges to
//   e^{-2 nu w} = u(nu),  u = d1 d2 / (d1 d2 - 2 nu Q),
// with d_j = p_j nu + q_j and Q = p1 q2 + p2 q1 < 0. Between the asymptote
// points nu_j* = -1/g_j the product d1 d2 is negative and no root exists,
// so fhat = -2 nu w - log u has exactly one zero above max(nu*) and one
// below min(nu*) (the latter iff g1 + g2 + pi/3 > 0). This separates
// near-degenerate pairs that a plain residual sweep cannot resolve: their
// splitting shrinks like e^{-nu w} and a sign sweep steps right over it.
double fhat(double nu, const BoundaryData& b1, const BoundaryData& b2) {
    const double d1 = b1.p * nu + b1.q;
    const double d2 = b2.p * nu + b2.q;
    const double prod = d1 * d2;
    const double q_cross = b1.p * b2.q + b2.p * b1.q;
    const double u = prod / (prod - 2.0 * nu * q_cross);
    if (!(u > 0.0)) return std::numeric_limits<double>::infinity();
    return -2.0 * nu * wedge - std::log(u);
}

// Decoupled closed forms for exactly symmetric couplings: the problem
// splits about theta = pi/6 into g = -coth(nu pi/6)/nu (even branch, any
// g < 0) and g = -tanh(nu pi/6)/nu (odd branch, g in (-pi/6, 0) only).
double symmetric_even_root(double g) {
    const double half = wedge / 2.0;
    auto f = [&](double nu) { return g + 1.0 / (std::tanh(nu * half) * nu); };
    return brent_root(f, 1e-8, -2.0 / g + 2.0, 1e-15);
}

double symmetric_odd_root(double g) {
    const double half = wedge / 2.0;
    auto f = [&](double nu) { return g + std::tanh(nu * half) / nu; };
    return brent_root(f, 1e-12, -2.0 / g + 2.0, 1e-15);
}

// Beyond this depth e^{-2 nu w} is below one ulp of the O(1) terms in the
// root condition and the asymptote -1/g IS the root to double precision.
constexpr double deep_nu = 15.0;

std::vector<double> negative_nus(const CouplingPair& c,
                                 const BoundaryData& b1,
                                 const BoundaryData& b2) {
    const bool neg1 = !is_neumann(c.g1) && c.g1 < 0.0;
    const bool neg2 = !is_neumann(c.g2) && c.g2 < 0.0;
    if (!neg1 && !neg2) return {};  // residual is strictly one-signed there

    if (neg1 && neg2 && c.g1 == c.g2) {
        std::vector<double> nus{symmetric_even_root(c.g1)};
        if (c.g1 > -wedge / 2.0) nus.push_back(symmetric_odd_root(c.g1));
        std::sort(nus.begin(), nus.end());
        return nus;
    }

    if (neg1 && neg2) {
        const double pa = -1.0 / c.g1, pb = -1.0 / c.g2;
        const double pmin = std::min(pa, pb), pmax = std::max(pa, pb);
        std::vector<double> nus;

        // root above pmax (always present for two attractive ends)
        if (pmax > deep_nu) {
            nus.push_back(pmax);
        } else {
            double a = std::numeric_limits<double>::quiet_NaN();
            for (double d = 1e-14; d <= 1e-4; d *= 10.0) {
                const double cand = pmax * (1.0 + d);
                const double v = fhat(cand, b1, b2);
                if (v > 0.0 && std::isfinite(v)) {
                    a = cand;
                    break;
                }
            }
            if (std::isnan(a)) {
                nus.push_back(pmax);  // spike thinner than an ulp
            } else {
                double b = pmax + 0.5;
                int guard = 0;
                while (fhat(b, b1, b2) >= 0.0 && ++guard < 80)
                    b = pmax + 2.0 * (b - pmax);
                nus.push_back(brent_root(
                    [&](double nu) { return fhat(nu, b1, b2); }, a, b, 1e-15));
            }
        }

        // root below pmin iff g1 + g2 + pi/3 > 0; fhat is negative on
        // (0, root) and positive on (root, pmin), so any negative knot
        // plus a positive right edge brackets it
        double right = std::numeric_limits<double>::quiet_NaN();
        for (double d = 1e-14; d <= 1e-4; d *= 10.0) {
            const double cand = pmin * (1.0 - d);
            const double v = fhat(cand, b1, b2);
            if (v > 0.0 && std::isfinite(v)) {
                right = cand;
                break;
            }
        }
        double neg_knot = std::numeric_limits<double>::quiet_NaN();
        for (double nu = 1e-9; nu < pmin * (1.0 - 1e-12); nu *= 1.06) {
            if (fhat(nu, b1, b2) < 0.0) {
                neg_knot = nu;
                break;
            }
        }
        if (!std::isnan(neg_knot)) {
            if (!std::isnan(right) && right > neg_knot)
                nus.push_back(brent_root(
                    [&](double nu) { return fhat(nu, b1, b2); }, neg_knot,
                    right, 1e-15));
            else
                nus.push_back(pmin);
        }
        std::sort(nus.begin(), nus.end());
        return nus;
    }

    // exactly one attractive finite end: at most one root, isolated
    const double g_neg = neg1 ? c.g1 : c.g2;
    const double pred = -1.0 / g_neg;
    if (pred > deep_nu) return {pred};
    const double hi = 1.4 * pred + 2.0;
    std::vector<double> found_t;
    scan_sweep(-hi, -1e-12, (int)std::ceil(hi / 0.01), b1, b2, found_t);
    std::vector<double> nus;
    for (double t : found_t) nus.push_back(-t);
    std::sort(nus.begin(), nus.end());
    if (nus.size() > 1)
        throw std::runtime_error(
            "angular_eigenvalues: multiple subcritical roots with a single "
            "attractive end contradicts the sheet structure");
    return nus;
}

// Channel assembly. Subcritical channels are stored in the two-layer form
//   Theta = alpha e^{-nu theta} + beta e^{-nu (w - theta)}
// whose coefficients come from whichever boundary relation
//   alpha d1 = beta E (p1 nu - q1),   beta d2 = alpha E (p2 nu - q2)
// has the healthier pivot (E = e^{-nu w}). This avoids both the overflow of
// cosh-type evaluation and the e^{2 nu w} cancellation that destroys the
// naive closed-form norm; all stored exponents are nonpositive.
AngularChannel assemble_channel(double lambda, const BoundaryData& b1,
                                const BoundaryData& b2) {
    AngularChannel ch;
    ch.lambda = lambda;
    ch.in_extension_window = (lambda > 0.0 && lambda < 1.0);
    ch.eval_p1 = b1.p;
    ch.eval_q1 = b1.q;
    ch.channel_index = -1;  // assigned after the merge

    if (lambda < 0.0) {
        const double nu = std::sqrt(-lambda);
        ch.nu = nu;
        const double E = std::exp(-nu * wedge);
        const double d1 = b1.p * nu + b1.q;
        const double d2 = b2.p * nu + b2.q;
        double alpha, beta;
        if (std::fabs(d1) >= std::fabs(d2)) {
            alpha = E * (b1.p * nu - b1.q);
            beta = d1;
        } else {
            alpha = d2;
            beta = E * (b2.p * nu - b2.q);
        }
        // fix the overall sign so (Theta(0), Theta'(0)) aligns with (p1, q1)
        const double t0 = alpha + beta * E;
        const double t1 = nu * (beta * E - alpha);
        if (t0 * b1.p + t1 * b1.q < 0.0) {
            alpha = -alpha;
            beta = -beta;
        }
        const double norm2 =
            (alpha * alpha + beta * beta) * (-std::expm1(-2.0 * nu * wedge)) /
                (2.0 * nu) +
            2.0 * alpha * beta * wedge * E;
        const double inv = 1.0 / std::sqrt(norm2);
        ch.inv_l2_norm = inv;
        ch.coeff_a = std::complex<double>(alpha * inv, 0.0);
        ch.coeff_b = std::complex<double>(beta * inv, 0.0);
        return ch;
    }

    // lambda >= 0: closed-form norm from the entire primitives
    //   E1 = sin(2 s w)/(2 s), G = (1 - cos(2 s w))/(2 lambda),
    //   J = (w - E1)/(2 lambda):
    //   norm^2 = p1^2 (w + E1)/2 + p1 q1 G + q1^2 J.
    const double p1 = b1.p, q1 = b1.q;
    double e1, gg, jj;
    const double z = 4.0 * wedge * wedge * lambda;  // (2 s w)^2
    if (z < 1e-3) {
        double e1s = 0.0, gs = 0.0, js = 0.0, zm = 1.0, fact = 1.0;
        for (int m = 0; m <= 8; ++m) {
            if (m > 0) fact *= (2 * m - 1) * (2 * m);
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            e1s += sgn * zm / (fact * (2 * m + 1));
            if (m >= 1) {
                gs += -sgn * zm / fact;  // 1 - cos(2sw) as a series in z
                js += -sgn * zm / (fact * (2 * m + 1));
            }
            zm *= z;
        }
        e1 = wedge * e1s;
        if (z == 0.0) {
            gg = wedge * wedge;
            jj = wedge * wedge * wedge / 3.0;
        } else {
            gg = 2.0 * wedge * wedge * (gs / z);
            jj = 2.0 * wedge * wedge * wedge * (js / z);
        }
    } else {
        const double s = std::sqrt(lambda);
        e1 = std::sin(2.0 * s * wedge) / (2.0 * s);
        gg = (1.0 - std::cos(2.0 * s * wedge)) / (2.0 * lambda);
        jj = (wedge - e1) / (2.0 * lambda);
    }
    const double norm2 =
        p1 * p1 * 0.5 * (wedge + e1) + p1 * q1 * gg + q1 * q1 * jj;
    const double inv = 1.0 / std::sqrt(norm2);
    ch.inv_l2_norm = inv;

    // exponential-representation coefficients A e^{i s th} + B e^{i s (w-th)}
    if (lambda < 1e-24) {
        // constant-mode limit; the generic 1/s forms degenerate at the origin
        ch.coeff_a = std::complex<double>(p1 * inv / 2.0, 0.0);
        ch.coeff_b = std::complex<double>(p1 * inv / 2.0, 0.0);
    } else {
        const double s = std::sqrt(lambda);
        const std::complex<double> i_unit(0.0, 1.0);
        const std::complex<double> a = p1 / 2.0 + q1 / (2.0 * i_unit * s);
        const std::complex<double> b =
            std::exp(-i_unit * s * wedge) *
            (p1 / 2.0 - q1 / (2.0 * i_unit * s));
        ch.coeff_a = a * inv;
        ch.coeff_b = b * inv;
    }
    return ch;
}

// Region membership in closed form. Neumann ends are g -> +infinity limits:
// the strip condition g1 + g2 < |g1 - g2| then degenerates to "the other
// coupling is negative".
void region_flags(const CouplingPair& c, bool& d0, bool& d1) {
    const bool n1 = is_neumann(c.g1), n2 = is_neumann(c.g2);
    d0 = !n1 && !n2 && c.g1 < 0.0 && c.g2 < 0.0;
    if (n1 && n2)
        d1 = false;
    else if (n1)
        d1 = c.g2 < 0.0;
    else if (n2)
        d1 = c.g1 < 0.0;
    else
        d1 = (c.g1 + c.g2 > -wedge) && (c.g1 + c.g2 < std::fabs(c.g1 - c.g2));
}

}  // namespace

double quantization_residual(double lambda, const CouplingPair& c) {
    const BoundaryData b1 = boundary_data(c.g1);
    const BoundaryData b2 = boundary_data(c.g2);
    if (lambda >= 0.0) return residual_pq(lambda, b1, b2);
    // undo the e^{-nu w} scaling; may saturate to +-inf at extreme depth,
    // with the sign still correct (the scale factor is positive)
    const double nu = std::sqrt(-lambda);
    return residual_scaled_neg(nu, b1, b2) * std::exp(nu * wedge);
}

std::vector<AngularChannel> angular_eigenvalues(const CouplingPair& c,
                                                int count, double nu_max) {
    if (count < 1)
        throw std::invalid_argument("angular_eigenvalues: count must be >= 1");
    if (!(nu_max > 0.0))
        throw std::invalid_argument("angular_eigenvalues: nu_max must be > 0");
    const BoundaryData b1 = boundary_data(c.g1);
    const BoundaryData b2 = boundary_data(c.g2);

    std::vector<double> roots_t;
    for (double nu : negative_nus(c, b1, b2)) roots_t.push_back(-nu);

    // positive side: eigenvalues sit ~3 apart in s = sqrt(lambda); sweep
    // past the requested count with margin. t = 0 is included so an exact
    // constant mode (Neumann pair, or couplings exactly on the phase line)
    // registers once.
    const double s_max = 3.0 * (count + 2);
    scan_sweep(0.0, s_max, (int)std::ceil(s_max / 0.05), b1, b2, roots_t);

    std::sort(roots_t.begin(), roots_t.end());
    // The only legitimate duplicate is the near-zero mode on the phase
    // line, which the negative-side solver and the positive sweep can both
    // claim, each smeared by its own solver noise. At most one true
    // eigenvalue fits in |t| < 1e-4: a second root that close to zero
    // would need -1/g below 1e-4, and in that limit only the single
    // sqrt-scale root survives, well outside the window. So everything
    // inside the window is one mode; merge it. No |t|-scaled tolerance:
    // symmetric near-degenerate pairs split like nu e^{-nu pi/3} and a
    // scaled cutoff would eventually swallow a real channel.
    roots_t.erase(std::unique(roots_t.begin(), roots_t.end(),
                              [](double a, double b) {
                                  return std::fabs(a) < 1e-4 &&
                                         std::fabs(b) < 1e-4;
                              }),
                  roots_t.end());

    if ((int)roots_t.size() < count)
        throw std::runtime_error(
            "angular_eigenvalues: found only " +
            std::to_string(roots_t.size()) + " roots of " +
            std::to_string(count) + " requested over sqrt|lambda| up to " +
            std::to_string(s_max));

    std::vector<AngularChannel> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double t = roots_t[i];
        const double lambda = (t < 0 ? -1.0 : 1.0) * t * t;
        if (!std::isfinite(lambda))
            throw std::range_error(
                "angular_eigenvalues: eigenvalue magnitude exceeds the "
                "double range");
        out.push_back(assemble_channel(lambda, b1, b2));
        out.back().channel_index = i;
    }
    return out;
}

PhaseVerdict classify_phase(const CouplingPair& c) {
    bool d0 = false, d1 = false;
    region_flags(c, d0, d1);

    PhaseVerdict v;
    v.region = d0 && d1 ? PhaseRegion::D0AndD1
               : d0     ? PhaseRegion::D0Only
               : d1     ? PhaseRegion::D1Only
                        : PhaseRegion::Unbroken;

    const auto channels = angular_eigenvalues(c, 3);
    int critical = 0;
    for (const auto& ch : channels) {
        if (ch.lambda < -1e-9)
            v.channels.push_back(ch);
        else if (std::fabs(ch.lambda) <= 1e-9)
            ++critical;  // numerically on the phase boundary
    }
    v.broken = !v.channels.empty();

    const int expected = (d0 ? 1 : 0) + (d1 ? 1 : 0);
    const int found = (int)v.channels.size();
    if (found != expected && !(critical > 0 && std::abs(found - expected) == 1))
        throw std::runtime_error(
            "classify_phase: closed-form region predicts " +
            std::to_string(expected) + " subcritical channel(s), solver "
            "found " + std::to_string(found) + " at g1 = " +
            std::to_string(c.g1) + ", g2 = " + std::to_string(c.g2));
    return v;
}

std::pair<double, double> symmetric_channel_roots(double g) {
    if (!(g > -wedge / 2.0) || !(g < 0.0))
        throw std::domain_error(
            "symmetric_channel_roots: g must lie in (-pi/6, 0), got " +
            std::to_string(g));
    return {symmetric_even_root(g), symmetric_odd_root(g)};
}

std::complex<double> eigenfunction(const AngularChannel& ch,
                                   const CouplingPair& c, double theta) {
    if (!(theta >= 0.0 && theta <= wedge))
        throw std::invalid_argument(
            "eigenfunction: theta must lie in [0, pi/3]");
    const BoundaryData b1 = boundary_data(c.g1);
    const BoundaryData b2 = boundary_data(c.g2);
    const double res =
        ch.lambda < 0 ? residual_scaled_neg(std::sqrt(-ch.lambda), b1, b2)
                      : residual_pq(ch.lambda, b1, b2);
    if (std::fabs(res) > 1e-8 || std::fabs(ch.eval_p1 - b1.p) > 1e-12 ||
        std::fabs(ch.eval_q1 - b1.q) > 1e-12)
        throw std::invalid_argument(
            "eigenfunction: channel does not belong to this coupling pair");

    if (ch.lambda < 0.0) {
        const double nu = std::sqrt(-ch.lambda);
        return {ch.coeff_a.real() * std::exp(-nu * theta) +
                    ch.coeff_b.real() * std::exp(-nu * (wedge - theta)),
                0.0};
    }
    const double value = (ch.eval_p1 * cos_like(ch.lambda, theta) +
                          ch.eval_q1 * sin_like(ch.lambda, theta)) *
                         ch.inv_l2_norm;
    return {value, 0.0};
}

double dimer_extent(double nu, double r) {
    if (!(nu > 0.0))
        throw std::invalid_argument("dimer_extent: nu must be positive");
    if (!(r > 0.0))
        throw std::invalid_argument("dimer_extent: r must be positive");
    return std::sqrt(2.0) * r * std::sin(1.0 / nu);
}

}  // namespace dsi
