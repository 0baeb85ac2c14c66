// Three-body hyperangular eigenproblem: -Theta'' = lambda Theta on
// (0, pi/3) with Robin conditions Theta'(0) = Theta(0)/g1 and
// Theta'(pi/3) = -Theta(pi/3)/g2 encoding the two-body contact couplings.
// Negative eigenvalues lambda = -nu^2 are the channels that break
// continuous scale invariance down to a discrete subgroup.
//
// All eigenvalues are zeros of a single residual that is entire in lambda
// (no tangent poles, no special-casing at lambda = 0), built from
// sigma(lambda) = sin(sqrt(lambda) pi/3)/sqrt(lambda) and
// c(lambda) = cos(sqrt(lambda) pi/3), both continued through lambda <= 0.
#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace dsi {

// Boundary couplings; +infinity encodes a Neumann end (1/g = 0 in the Robin
// condition), exact zero a Dirichlet end.
struct CouplingPair {
    double g1;
    double g2;
    static constexpr double neumann = std::numeric_limits<double>::infinity();
};

struct AngularChannel {
    double lambda;
    std::optional<double> nu;      // sqrt(-lambda), present iff lambda < 0
    std::complex<double> coeff_a;  // coefficients of the representation
    std::complex<double> coeff_b;  //   A e^{i s th} + B e^{i s (pi/3 - th)},
                                   // s = sqrt(lambda); L2-normalized
    int channel_index;             // position in the ascending spectrum
    bool in_extension_window;      // 0 < lambda < 1: the radial problem sits
                                   // in the self-adjoint-extension band
                                   // (flagged, not resolved)
    // Stable evaluation data. For lambda < 0 the (A, B) coefficients are
    // real and multiply decaying exponentials only, so they are the stable
    // route; for lambda >= 0 that basis degenerates like 1/s as lambda -> 0
    // and evaluation goes through the equivalent form
    // p1 cos(s th) + q1 sin(s th)/s with normalized boundary data (p1, q1).
    double eval_p1;
    double eval_q1;
    double inv_l2_norm;
};

enum class PhaseRegion { Unbroken, D0Only, D1Only, D0AndD1 };

struct PhaseVerdict {
    bool broken;
    std::vector<AngularChannel> channels;  // subcritical (lambda < 0) only
    PhaseRegion region;
};

// Continuous residual whose zeros are the eigenvalues: for lambda > 0 the
// tangent quantization condition with the pole regularized away (multiplied
// through by cos and divided by sqrt(lambda)), analytically continued to
// lambda <= 0 where tan(i z) -> i tanh(z); one sign convention throughout,
// so the value passes through lambda = 0 continuously with
// residual(0) proportional to -(pi/3 + g1 + g2).
double quantization_residual(double lambda, const CouplingPair& c);

// Lowest `count` eigenvalues, ascending, as fully populated channels.
// Positive eigenvalues come from a sign-change sweep in sqrt(lambda), where
// roots are ~3 apart. The at-most-two negative roots come from a rearranged
// condition e^{-2 nu pi/3} = u(nu) that brackets each root on its own side
// of the asymptote points -1/g, so near-degenerate pairs are resolved and
// roots deeper than nu ~ 15 (where the correction to -1/g is below one ulp)
// are registered in closed form. nu_max is validated for interface
// stability but no longer limits the reachable depth. Throws range_error
// if an eigenvalue magnitude exceeds the double range.
std::vector<AngularChannel> angular_eigenvalues(const CouplingPair& c,
                                                int count,
                                                double nu_max = 50.0);

// Region logic in closed form (D0: both couplings negative; D1: the strip
// -pi/3 < g1+g2 < |g1-g2|, taken as a limit for Neumann ends) cross-checked
// against the numerically found negative-eigenvalue count.
PhaseVerdict classify_phase(const CouplingPair& c);

// Symmetric couplings g1 = g2 = g in (-pi/6, 0): the problem decouples into
// reflection-even/odd halves with closed-form conditions
// g = -coth(pi nu/6)/nu (even, nu0) and g = -tanh(pi nu/6)/nu (odd, nu1).
// Returns (nu0, nu1) with nu0 > nu1.
std::pair<double, double> symmetric_channel_roots(double g);

// Unit-L2-normalized eigenfunction value; validates that the channel's
// eigenvalue actually satisfies this coupling pair's boundary conditions.
std::complex<double> eigenfunction(const AngularChannel& ch,
                                   const CouplingPair& c, double theta);

// Spatial extent sqrt(2) r sin(1/nu) of the boundary-localized pair at
// hyperradius r: the deeper the channel, the tighter the pair.
double dimer_extent(double nu, double r);

}  // namespace dsi
