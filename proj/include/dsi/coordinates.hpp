// Coordinate plumbing for n particles on a line. Configuration space is cut
// by the coincidence locus {x_j = x_k} into n! sectors; each sector maps to
// the ordered wedge x_1 > ... > x_n. On the wedge, Jacobi coordinates split
// off the center of mass and hyperspherical coordinates split the relative
// part into a hyperradius and a direction. Full bosonic/fermionic
// wavefunctions are assembled from factors living on the wedge.
#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace dsi {

enum class Statistics { Bose, Fermi };

class ParticleConfig {
  public:
    explicit ParticleConfig(std::vector<double> positions);
    const std::vector<double>& positions() const { return pos_; }
    int n() const { return static_cast<int>(pos_.size()); }
    // exact pairwise equality: the configuration sits on the coincidence locus
    bool on_coincidence_locus() const;
    // within a relative band of the locus (quadrature grids can land there)
    bool near_coincidence(double rel_tol = 1e-12) const;

  private:
    std::vector<double> pos_;
};

// One sector of a configuration: positions sorted strictly decreasing, the
// permutation carrying the sorted list back to input slots, its signature.
struct SectorDecomposition {
    std::vector<double> sorted;    // strictly decreasing
    std::vector<int> permutation;  // input[i] = sorted[permutation[i]]
    int sign;                      // parity of that permutation, +1 or -1
};

struct HypersphericalPoint {
    double xi_n;                  // center-of-mass coordinate (x1+...+xn)/sqrt(n)
    double r;                     // hyperradius of the n-1 relative coordinates
    std::vector<double> hat_xi;   // unit direction in relative space
    std::optional<double> theta;  // hyperangle atan2(hat_xi[0], hat_xi[1]),
                                  // populated for n = 3 only
};

// xi_j = e_j . x with e_j = (1,...,1,-j,0,...,0)/sqrt(j(j+1)) for j < n and
// e_n = (1,...,1)/sqrt(n); orthogonal, so Euclidean norms are preserved.
std::vector<double> jacobi_transform(const ParticleConfig& config);

// r = sqrt(xi_1^2+...+xi_{n-1}^2); throws on a vanishing relative vector
// (total coincidence). The two-argument form also cross-checks
// r^2 = (1/n) sum_{j<k} (x_j - x_k)^2 against the source configuration.
HypersphericalPoint hyperspherical(const std::vector<double>& jacobi);
HypersphericalPoint hyperspherical(const std::vector<double>& jacobi,
                                   const ParticleConfig& source);

// Throws on exact coincidence (the sector is undefined on the locus).
SectorDecomposition sector_map(const std::vector<double>& positions);

// Boundary-coupling profile a_j = r g_j: linear in r is the only form
// compatible with scale invariance, and r depends on relative coordinates
// only, giving translation invariance.
double coupling_profile(int j, double g, const HypersphericalPoint& point);

using RadialEvaluator = std::function<std::complex<double>(double)>;
using AngularEvaluator = std::function<double(const HypersphericalPoint&)>;

// (1/sqrt(n!)) (sign if Fermi) r^{-(n-2)/2} e^{i p xi_n} R(r) Theta(sector),
// with the angular factor evaluated on the sorted sector's direction.
std::complex<double> assemble_wavefunction(const ParticleConfig& point,
                                           double cm_momentum,
                                           const RadialEvaluator& radial,
                                           const AngularEvaluator& angular,
                                           Statistics statistics);

// Adapts a function of the n = 3 hyperangle to an AngularEvaluator.
AngularEvaluator make_three_body_angular(std::function<double(double)> f);

}  // namespace dsi
