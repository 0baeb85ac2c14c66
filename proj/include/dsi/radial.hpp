// Radial problem of a subcritical channel: an attractive 1/r^2 whose
// strength nu^2 + 1/4 exceeds the critical value, producing a geometric
// tower of bound states kappa_ell = kappa_star e^{-ell pi/nu} (unbounded in
// both directions) and a log-periodic unimodular S-matrix. Energies use
// hbar^2/(2m) = 1 throughout.
#pragma once

#include <complex>

namespace dsi {

// A channel is fixed by the particle number, the angular eigenvalue lambda
// below the critical value -(n-3)^2/4, and the emergent scale kappa_star
// picked by the regularization.
struct ChannelParams {
    int n;
    double lambda;
    double nu;  // sqrt(critical_lambda(n) - lambda)
    double kappa_star;

    ChannelParams(int n, double lambda, double kappa_star);
    // convenience: channel with given nu, i.e. lambda = lambda_c - nu^2
    static ChannelParams from_nu(int n, double nu, double kappa_star);
};

struct BoundState {
    int ell;
    double kappa;   // kappa_star e^{-ell pi/nu}
    double energy;  // -kappa^2
    double norm;    // |N_kappa| = sqrt(kappa sinh(nu pi)/nu)
};

struct ScatteringPoint {
    double k;
    std::complex<double> s_value;  // unimodular
};

struct ResidueCheck {
    std::complex<double> residue;   // numeric limit (k - i kappa_ell) S(k)
    std::complex<double> expected;  // i kappa_ell sinh(nu pi)/nu
};

// -(n-3)^2/4: angular eigenvalues below this make the channel subcritical.
double critical_lambda(int n);

// Level ell of the geometric tower; throws std::range_error when
// |ell| pi/nu overflows the double exponent range.
BoundState bound_state(const ChannelParams& p, int ell);

// R(r) = N sqrt(2 kappa r/pi) K_{i nu}(kappa r), unit L2 norm on (0, inf),
// N real positive; decays as N e^{-kappa r} once kappa r >> 1.
double bound_radial_wavefunction(const ChannelParams& p, double kappa,
                                 double r);

// S(k) = i sinh(nu pi/2 - i nu log(k/kappa_star))
//          / sinh(nu pi/2 + i nu log(k/kappa_star)):
// unimodular, log-periodic with period pi/nu in log k, poles at the bound
// states k = i kappa_ell.
ScatteringPoint s_matrix(const ChannelParams& p, double k);

// Same S continued to complex k (principal log; upper half plane is the
// physical sheet where bound-state poles live).
std::complex<double> s_matrix_at(const ChannelParams& p,
                                 std::complex<double> k);

// R(r) = sqrt(pi k r/2) (e^{-i(1+2 i nu) pi/4} H2_{i nu}(kr)
//                        + S(k) e^{+i(1+2 i nu) pi/4} H1_{i nu}(kr)),
// approaching e^{-ikr} + S e^{+ikr} for kr >> 1.
std::complex<double> scattering_radial_wavefunction(const ChannelParams& p,
                                                    double k, double r);

// Numeric residue of S at the pole k = i kappa_ell via Richardson
// extrapolation along a radial approach, against the closed form
// i kappa_ell sinh(nu pi)/nu (= i |N_kappa|^2). Throws on a non-convergent
// extrapolation.
ResidueCheck residue_check(const ChannelParams& p, int ell);

}  // namespace dsi
