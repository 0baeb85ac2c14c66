#include "dsi/coordinates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dsi {

ParticleConfig::ParticleConfig(std::vector<double> positions)
    : pos_(std::move(positions)) {
    if (pos_.size() < 2)
        throw std::invalid_argument(
            "ParticleConfig: need at least 2 positions, got " +
            std::to_string(pos_.size()));
    for (double x : pos_)
        if (!std::isfinite(x))
            throw std::invalid_argument(
                "ParticleConfig: positions must be finite");
}

bool ParticleConfig::on_coincidence_locus() const {
    for (size_t j = 0; j < pos_.size(); ++j)
        for (size_t k = j + 1; k < pos_.size(); ++k)
            if (pos_[j] == pos_[k]) return true;
    return false;
}

bool ParticleConfig::near_coincidence(double rel_tol) const {
    double scale = 1.0;
    for (double x : pos_) scale = std::max(scale, std::fabs(x));
    for (size_t j = 0; j < pos_.size(); ++j)
        for (size_t k = j + 1; k < pos_.size(); ++k)
            if (std::fabs(pos_[j] - pos_[k]) <= rel_tol * scale) return true;
    return false;
}

std::vector<double> jacobi_transform(const ParticleConfig& config) {
    const auto& x = config.positions();
    const int n = config.n();
    std::vector<double> xi(n);
    // e_j = (1,...,1,-j,0,...,0)/sqrt(j(j+1)): prefix sums make each relative
    // coordinate O(n) once accumulated left to right
    double prefix = 0.0;
    for (int j = 1; j < n; ++j) {
        prefix += x[j - 1];
        xi[j - 1] = (prefix - j * x[j]) / std::sqrt(double(j) * (j + 1));
    }
    prefix += x[n - 1];
    xi[n - 1] = prefix / std::sqrt(double(n));
    return xi;
}

namespace {

HypersphericalPoint hyperspherical_impl(const std::vector<double>& jacobi,
                                        const ParticleConfig* source) {
    const int n = static_cast<int>(jacobi.size());
    if (n < 2)
        throw std::invalid_argument("hyperspherical: need at least 2 "
                                    "coordinates");
    double r2 = 0.0;
    for (int j = 0; j + 1 < n; ++j) r2 += jacobi[j] * jacobi[j];
    if (r2 == 0.0)
        throw std::invalid_argument("hyperspherical: zero relative vector "
                                    "(total coincidence)");
    const double r = std::sqrt(r2);

    if (source) {
        // independent form of the hyperradius from pairwise separations
        const auto& x = source->positions();
        if (static_cast<int>(x.size()) != n)
            throw std::invalid_argument("hyperspherical: source length "
                                        "mismatch");
        double pair2 = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                pair2 += (x[j] - x[k]) * (x[j] - x[k]);
        pair2 /= n;
        if (std::fabs(pair2 - r2) > 1e-12 * std::max(1.0, r2))
            throw std::runtime_error(
                "hyperspherical: hyperradius cross-check failed: " +
                std::to_string(r2) + " vs " + std::to_string(pair2));
    }

    HypersphericalPoint p;
    p.xi_n = jacobi[n - 1];
    p.r = r;
    p.hat_xi.resize(n - 1);
    for (int j = 0; j + 1 < n; ++j) p.hat_xi[j] = jacobi[j] / r;
    if (n == 3) p.theta = std::atan2(p.hat_xi[0], p.hat_xi[1]);
    return p;
}

}  // namespace

HypersphericalPoint hyperspherical(const std::vector<double>& jacobi) {
    return hyperspherical_impl(jacobi, nullptr);
}

HypersphericalPoint hyperspherical(const std::vector<double>& jacobi,
                                   const ParticleConfig& source) {
    return hyperspherical_impl(jacobi, &source);
}

SectorDecomposition sector_map(const std::vector<double>& positions) {
    const int n = static_cast<int>(positions.size());
    if (n < 2)
        throw std::invalid_argument("sector_map: need at least 2 positions");
    std::vector<int> order(n);  // order[j] = input slot of j-th largest
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return positions[a] > positions[b];
    });

    SectorDecomposition d;
    d.sorted.resize(n);
    d.permutation.resize(n);
    for (int j = 0; j < n; ++j) {
        d.sorted[j] = positions[order[j]];
        d.permutation[order[j]] = j;
    }
    for (int j = 0; j + 1 < n; ++j)
        if (d.sorted[j] == d.sorted[j + 1])
            throw std::invalid_argument(
                "sector_map: positions on the coincidence locus");

    // parity via cycle decomposition: each cycle of length L contributes
    // L - 1 transpositions
    std::vector<char> seen(n, 0);
    int transpositions = 0;
    for (int j = 0; j < n; ++j) {
        if (seen[j]) continue;
        int len = 0;
        for (int k = j; !seen[k]; k = d.permutation[k]) {
            seen[k] = 1;
            ++len;
        }
        transpositions += len - 1;
    }
    d.sign = (transpositions % 2 == 0) ? 1 : -1;
    return d;
}

double coupling_profile(int j, double g, const HypersphericalPoint& point) {
    if (j < 1)
        throw std::invalid_argument("coupling_profile: boundary index must "
                                    "be >= 1, got " + std::to_string(j));
    if (!(point.r > 0.0))
        throw std::invalid_argument("coupling_profile: requires r > 0");
    return point.r * g;
}

std::complex<double> assemble_wavefunction(const ParticleConfig& point,
                                           double cm_momentum,
                                           const RadialEvaluator& radial,
                                           const AngularEvaluator& angular,
                                           Statistics statistics) {
    const int n = point.n();
    const SectorDecomposition sector = sector_map(point.positions());
    const ParticleConfig ordered(sector.sorted);
    const auto jac = jacobi_transform(ordered);
    const HypersphericalPoint hp = hyperspherical(jac, ordered);

    double fact = 1.0;
    for (int j = 2; j <= n; ++j) fact *= j;

    const std::complex<double> cm =
        std::exp(std::complex<double>(0.0, cm_momentum * hp.xi_n));
    std::complex<double> value = (1.0 / std::sqrt(fact)) *
                                 std::pow(hp.r, -0.5 * (n - 2)) * cm *
                                 radial(hp.r) * angular(hp);
    if (statistics == Statistics::Fermi) value *= sector.sign;
    return value;
}

AngularEvaluator make_three_body_angular(std::function<double(double)> f) {
    return [f = std::move(f)](const HypersphericalPoint& p) {
        if (!p.theta)
            throw std::invalid_argument("three-body angular evaluator needs "
                                        "an n = 3 point");
        return f(*p.theta);
    };
}

}  // namespace dsi
