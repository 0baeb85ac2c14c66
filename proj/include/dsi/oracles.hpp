// Independent brute-force solvers that the closed forms are tested against.
// Nothing here calls into the angular/radial/special-function evaluation
// paths: the angular and radial oracles discretize the differential
// operators directly, and the quadrature oracle integrates the defining
// integral representation with an off-the-shelf adaptive engine.
#pragma once

#include <vector>

#include "dsi/angular.hpp"
#include "dsi/coordinates.hpp"

namespace dsi {

struct GridSpec {
    int points = 160;          // base resolution; doubles per level
    double lower = 0.0;
    double upper = 0.0;
    int refinement_levels = 3; // Richardson extrapolation depth
};

// Lowest `count` eigenvalues of the second-difference operator on
// (0, pi/3) with ghost-point Robin closures (+Theta' - Theta/g1 = 0 at 0,
// -Theta' - Theta/g2 = 0 at pi/3), Richardson-extrapolated across
// refinement levels. grid.lower/upper must be 0 and pi/3.
std::vector<double> fd_angular_eigenvalues(const CouplingPair& c,
                                           const GridSpec& grid, int count);

// Lowest `count` negative eigenvalues of -u'' - (nu^2 + 1/4)/r^2 u = E u
// with Dirichlet walls at r_min (the cutoff regularization) and r_max,
// discretized uniformly in log r so the self-similar tower keeps fixed
// points-per-level across decades. Only the ratio of consecutive deep
// levels is universal; absolute energies are cutoff artifacts.
std::vector<double> fd_radial_spectrum(double nu, double r_min, double r_max,
                                       const GridSpec& grid, int count);

// Same solver for a general inverse-square strength: potential
// -strength/r^2 (strength > 1/4 is the supercritical tower regime;
// strength < 1/4 produces no tower, which the tests exploit as a negative
// control).
std::vector<double> fd_inverse_square_spectrum(double strength, double r_min,
                                               double r_max,
                                               const GridSpec& grid,
                                               int count);

struct QuadratureResult {
    double value;
    double error_estimate;  // absolute: quadrature estimate + tail bound
};

// K_{i nu}(x) by adaptive tanh-sinh quadrature of the defining integral
// int_0^inf e^{-x cosh t} cos(nu t) dt, truncated with an analytic tail
// bound. Throws when the requested accuracy is not certifiable (cancellation
// for x well below nu pi/2 is a property of the integral itself).
QuadratureResult quadrature_bessel_k(double nu, double x);

// |int_0^infty conj(f) g dr| via panel quadrature with an exponential
// window e^{-eta r} extrapolated to eta -> 0, which gives conditionally
// convergent oscillatory overlaps a definite value. r_max caps the support
// actually sampled (integrands must be negligible or purely oscillatory
// beyond it).
double overlap_quadrature(const RadialEvaluator& f, const RadialEvaluator& g,
                          double r_max);

}  // namespace dsi
