// The authoritative tolerance table. Every verification surface (the CLI
// verify command, the test suites) reads from here so a bound is stated in
// exactly one place. "default" carries the contract tolerances; "strict"
// tightens those with measured headroom (values chosen ~3x above observed
// worst-case errors on this implementation).
#pragma once

#include <string>

namespace dsi {

struct ToleranceProfile {
    const char* name;

    double special_vs_oracle_rel;      // K_{i nu} closed route vs quadrature
    double wronskian_rel;              // Hankel pair Wronskian identity
    double gamma_identity_rel;         // |Gamma(1+i nu)|^2 vs closed form

    double angular_vs_oracle_abs;      // eigenvalues vs finite differences
    double angular_residual_abs;       // quantization residual at roots
    double boundary_line_lambda_abs;   // |lambda_1| on g1+g2 = -pi/3
    double angular_orthogonality_abs;  // distinct-channel L2 overlaps

    double unitarity_abs;              // ||S| - 1|
    double log_periodicity_abs;        // |S(e^{pi/nu} k) - S(k)|
    double conjugation_abs;            // |conj(S(k)) + S(kappa_star^2/k)|
    double residue_rel;                // S-matrix pole residue vs closed form
    double radial_ratio_rel;           // oracle tower ratio vs e^{-2 pi/nu}
    double spectrum_ratio_rel;         // closed-form ratio column constancy

    double normalization_abs;          // |int R^2 - 1|
    double bound_bound_overlap_abs;    // |int R_a R_b|, distinct levels
    double bound_scatter_overlap_abs;  // |int conj(R_bound) R_scatter|
};

// name is "default" or "strict"; throws std::invalid_argument otherwise.
const ToleranceProfile& tolerance_profile(const std::string& name);

}  // namespace dsi
