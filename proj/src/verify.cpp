// Verification suites and the tolerance table they read from. Each check
// produces one measured number (a worst case over its sample set) compared
// against one named bound, so the CLI report and the tests agree on what
// was checked and how tightly.
#include "dsi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dsi/angular.hpp"
#include "dsi/imag_bessel.hpp"
#include "dsi/numerics.hpp"
#include "dsi/oracles.hpp"
#include "dsi/radial.hpp"
#include "dsi/tolerances.hpp"

namespace dsi {

namespace {

constexpr double pi_d = std::numbers::pi;

constexpr ToleranceProfile profile_default = {
    "default",
    1e-10,  // special_vs_oracle_rel
    1e-9,   // wronskian_rel
    1e-12,  // gamma_identity_rel
    1e-4,   // angular_vs_oracle_abs
    1e-9,   // angular_residual_abs
    1e-4,   // boundary_line_lambda_abs
    1e-8,   // angular_orthogonality_abs
    1e-12,  // unitarity_abs
    1e-12,  // log_periodicity_abs
    1e-12,  // conjugation_abs
    1e-6,   // residue_rel
    1e-2,   // radial_ratio_rel
    1e-14,  // spectrum_ratio_rel
    1e-6,   // normalization_abs
    1e-6,   // bound_bound_overlap_abs
    1e-5,   // bound_scatter_overlap_abs
};

// ~3x the worst case measured on this implementation (see the calibration
// numbers in the tests); trips on any real regression while staying clear
// of run-to-run noise.
constexpr ToleranceProfile profile_strict = {
    "strict",
    1e-15,  // special_vs_oracle_rel
    1e-15,  // wronskian_rel
    1e-14,  // gamma_identity_rel
    5e-10,  // angular_vs_oracle_abs
    5e-14,  // angular_residual_abs
    1e-12,  // boundary_line_lambda_abs
    1e-14,  // angular_orthogonality_abs
    1e-15,  // unitarity_abs
    3e-14,  // log_periodicity_abs
    3e-14,  // conjugation_abs
    2e-12,  // residue_rel
    1e-5,   // radial_ratio_rel
    7e-15,  // spectrum_ratio_rel
    2e-10,  // normalization_abs
    1e-12,  // bound_bound_overlap_abs
    1e-12,  // bound_scatter_overlap_abs
};

void push(SuiteResult& suite, const char* name, double measured,
          double tolerance) {
    const bool pass = std::isfinite(measured) && measured <= tolerance;
    suite.checks.push_back({name, measured, tolerance, pass});
    suite.pass = suite.pass && pass;
}

double rel_dev(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

// The eigenvalue on the sheet that crosses zero at g1 + g2 = -pi/3: index
// 1 when the deeper both-couplings-negative channel exists below it,
// index 0 otherwise.
double boundary_sheet_lambda(const CouplingPair& c) {
    const std::vector<AngularChannel> ch = angular_eigenvalues(c, 2);
    return (c.g1 < 0.0 && c.g2 < 0.0) ? ch[1].lambda : ch[0].lambda;
}

SuiteResult run_special(const ToleranceProfile& tol) {
    SuiteResult suite{"special", {}, true};

    {
        const double nus[] = {0.3, 1.5, 8.0};
        const double xs[] = {0.1, 3.0, 60.0};
        double worst = 0.0;
        for (double nu : nus)
            for (double x : xs) {
                const QuadratureResult q = quadrature_bessel_k(nu, x);
                worst = std::max(worst,
                                 rel_dev(bessel_k_imag(nu, x), q.value));
            }
        push(suite, "k-vs-quadrature", worst, tol.special_vs_oracle_rel);
    }

    {
        const double nus[] = {0.3, 1.0, 3.0};
        const double xs[] = {0.5, 5.0, 50.0};
        double worst = 0.0;
        for (double nu : nus)
            for (double x : xs) {
                const std::complex<double> w =
                    hankel_imag(1, nu, x) * hankel_imag_deriv(2, nu, x) -
                    hankel_imag_deriv(1, nu, x) * hankel_imag(2, nu, x);
                const std::complex<double> target(0.0, -4.0 / (pi_d * x));
                worst = std::max(worst, std::abs(w - target) /
                                            std::abs(target));
            }
        push(suite, "hankel-wronskian", worst, tol.wronskian_rel);
    }

    {
        double worst = 0.0;
        for (double nu : {0.3, 1.0, 3.0, 8.0}) {
            const double mod2 =
                std::exp(2.0 * log_gamma_one_plus_i(nu).real());
            worst = std::max(worst,
                             rel_dev(mod2, pi_d * nu / std::sinh(pi_d * nu)));
        }
        push(suite, "gamma-modulus", worst, tol.gamma_identity_rel);
    }

    return suite;
}

SuiteResult run_angular(const ToleranceProfile& tol) {
    SuiteResult suite{"angular", {}, true};
    const CouplingPair pairs[] = {
        {-1.0, -1.0}, {0.7, -0.4}, {CouplingPair::neumann, -0.8}};

    {
        const GridSpec grid{160, 0.0, pi_d / 3.0, 3};
        double worst = 0.0;
        for (const CouplingPair& c : pairs) {
            const std::vector<double> fd =
                fd_angular_eigenvalues(c, grid, 3);
            const std::vector<AngularChannel> ch = angular_eigenvalues(c, 3);
            for (int i = 0; i < 3; ++i)
                worst = std::max(worst, std::abs(fd[i] - ch[i].lambda));
        }
        push(suite, "eigenvalues-vs-fd", worst, tol.angular_vs_oracle_abs);
    }

    {
        double worst = 0.0;
        for (const CouplingPair& c : pairs)
            for (const AngularChannel& ch : angular_eigenvalues(c, 4))
                worst = std::max(
                    worst, std::abs(quantization_residual(ch.lambda, c)));
        push(suite, "residual-at-roots", worst, tol.angular_residual_abs);
    }

    {
        // Along g1 + g2 = -pi/3 the boundary-crossing eigenvalue sits at
        // zero. It is the second-lowest only where both couplings also
        // bind the deeper boundary channel (both negative); once one
        // coupling turns repulsive that channel is gone and the crossing
        // eigenvalue is the lowest.
        double worst = 0.0;
        for (int i = 0; i < 12; ++i) {
            const double t = -1.0 + 2.0 * i / 11.0;
            const CouplingPair c{-pi_d / 6.0 + t, -pi_d / 6.0 - t};
            worst = std::max(worst, std::abs(boundary_sheet_lambda(c)));
        }
        push(suite, "critical-line-lambda1", worst,
             tol.boundary_line_lambda_abs);
    }

    {
        const CouplingPair c{-0.9, -0.25};
        const std::vector<AngularChannel> ch = angular_eigenvalues(c, 4);
        double worst = 0.0;
        for (std::size_t i = 0; i < ch.size(); ++i)
            for (std::size_t j = i + 1; j < ch.size(); ++j) {
                const auto prod = [&](long double th) {
                    const double t = static_cast<double>(th);
                    return static_cast<std::complex<long double>>(
                        std::conj(eigenfunction(ch[i], c, t)) *
                        eigenfunction(ch[j], c, t));
                };
                const std::complex<long double> overlap =
                    gl_composite(prod, 0.0L, pi_d / 3.0L, 40, 24);
                worst = std::max(worst,
                                 static_cast<double>(std::abs(overlap)));
            }
        push(suite, "channel-orthogonality", worst,
             tol.angular_orthogonality_abs);
    }

    return suite;
}

SuiteResult run_radial(const ToleranceProfile& tol, double inject_nu_scale) {
    SuiteResult suite{"radial", {}, true};
    const double kappa_star = 0.7;

    {
        double worst_uni = 0.0, worst_per = 0.0, worst_conj = 0.0;
        for (double nu : {0.3, 1.0, 3.0}) {
            // The injection scales the nu the S-matrix is evaluated with,
            // while the period below keeps the nominal nu; see VerifyOptions.
            const ChannelParams eval = ChannelParams::from_nu(
                3, nu * (1.0 + inject_nu_scale), kappa_star);
            const double shift = std::exp(pi_d / nu);
            const int points = 400;
            for (int i = 0; i < points; ++i) {
                const double k =
                    kappa_star *
                    std::pow(10.0, 8.0 * (static_cast<double>(i) /
                                              (points - 1) -
                                          0.5));
                const std::complex<double> s = s_matrix(eval, k).s_value;
                worst_uni =
                    std::max(worst_uni, std::abs(std::abs(s) - 1.0));
                worst_per = std::max(
                    worst_per,
                    std::abs(s_matrix(eval, k * shift).s_value - s));
                worst_conj = std::max(
                    worst_conj,
                    std::abs(std::conj(s) +
                             s_matrix(eval, kappa_star * kappa_star / k)
                                 .s_value));
            }
        }
        push(suite, "unitarity", worst_uni, tol.unitarity_abs);
        push(suite, "log-periodicity", worst_per, tol.log_periodicity_abs);
        push(suite, "conjugation-symmetry", worst_conj,
             tol.conjugation_abs);
    }

    {
        double worst = 0.0;
        for (double nu : {0.5, 1.0})
            for (int ell : {-1, 0, 1}) {
                const ResidueCheck rc = residue_check(
                    ChannelParams::from_nu(3, nu, kappa_star), ell);
                worst = std::max(worst, std::abs(rc.residue - rc.expected) /
                                            std::abs(rc.expected));
            }
        push(suite, "pole-residues", worst, tol.residue_rel);
    }

    {
        const double nu = 1.0;
        const std::vector<double> levels =
            fd_radial_spectrum(nu, 1e-8, 100.0, GridSpec{1600, 0.0, 0.0, 2},
                               6);
        const double target = std::exp(-2.0 * pi_d / nu);
        double worst = 0.0;
        // The shallowest level feels the walls; interior ratios are
        // universal.
        for (std::size_t i = 1; i + 1 < levels.size(); ++i)
            worst = std::max(worst,
                             rel_dev(levels[i + 1] / levels[i], target));
        push(suite, "fd-tower-ratio", worst, tol.radial_ratio_rel);
    }

    {
        const ChannelParams p = ChannelParams::from_nu(3, 1.0, kappa_star);
        const double target = std::exp(-2.0 * pi_d / p.nu);
        double worst = 0.0;
        for (int ell = -3; ell < 3; ++ell)
            worst = std::max(
                worst, rel_dev(bound_state(p, ell + 1).energy /
                                   bound_state(p, ell).energy,
                               target));
        push(suite, "tower-ratio-constancy", worst, tol.spectrum_ratio_rel);
    }

    return suite;
}

SuiteResult run_orthogonality(const ToleranceProfile& tol) {
    SuiteResult suite{"orthogonality", {}, true};
    const ChannelParams p = ChannelParams::from_nu(3, 1.0, 1.0);
    const BoundState b0 = bound_state(p, 0);
    const BoundState b1 = bound_state(p, 1);
    const RadialEvaluator r0 = [&](double r) {
        return std::complex<double>(
            bound_radial_wavefunction(p, b0.kappa, r), 0.0);
    };
    const RadialEvaluator r1 = [&](double r) {
        return std::complex<double>(
            bound_radial_wavefunction(p, b1.kappa, r), 0.0);
    };

    push(suite, "bound-norm",
         std::abs(overlap_quadrature(r0, r0, 80.0) - 1.0),
         tol.normalization_abs);
    push(suite, "bound-bound-overlap", overlap_quadrature(r0, r1, 2000.0),
         tol.bound_bound_overlap_abs);

    const double k = 0.9;
    const RadialEvaluator rs = [&](double r) {
        return scattering_radial_wavefunction(p, k, r);
    };
    push(suite, "bound-scatter-overlap", overlap_quadrature(r0, rs, 360.0),
         tol.bound_scatter_overlap_abs);

    return suite;
}

}  // namespace

const ToleranceProfile& tolerance_profile(const std::string& name) {
    if (name == "default") return profile_default;
    if (name == "strict") return profile_strict;
    throw std::invalid_argument("unknown tolerance profile: " + name +
                                " (expected \"default\" or \"strict\")");
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"special", "angular",
                                                   "radial",
                                                   "orthogonality"};
    return names;
}

std::vector<SuiteResult> run_verify(const std::vector<std::string>& suites,
                                    const VerifyOptions& options) {
    const ToleranceProfile& tol = tolerance_profile(options.profile);
    const std::vector<std::string>& known = verify_suite_names();
    const std::vector<std::string>& chosen =
        suites.empty() ? known : suites;
    for (const std::string& name : chosen)
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw std::invalid_argument("unknown verify suite: " + name);

    std::vector<SuiteResult> results;
    results.reserve(chosen.size());
    for (const std::string& name : chosen) {
        if (name == "special")
            results.push_back(run_special(tol));
        else if (name == "angular")
            results.push_back(run_angular(tol));
        else if (name == "radial")
            results.push_back(run_radial(tol, options.inject_nu_scale));
        else
            results.push_back(run_orthogonality(tol));
    }
    return results;
}

}  // namespace dsi
