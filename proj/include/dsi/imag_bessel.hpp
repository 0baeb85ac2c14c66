// Cylinder functions of imaginary order on the positive real axis:
//   K_{i nu}(x)        modified Bessel function of the third kind,
//   H^(1,2)_{i nu}(x)  Hankel functions,
// the radial building blocks for an attractive 1/r^2 channel. K_{i nu} is
// real for real nu, x > 0 and oscillates as x -> 0; the Hankel pair carries
// the +-e^{ikr} scattering asymptotics.
//
// Evaluation strategy (per function, switched on x):
//   small/moderate x   complex power series around x = 0,
//   intermediate x     integral representations on Gauss-Legendre panels,
//   large x            large-argument asymptotic expansion,
// with all internal arithmetic in (80-bit) long double so the route
// crossovers match to ~1e-12 relative. Certified envelope: K to 1e-10
// relative for nu in (0, 30], x in (0, 700]; Hankel to 1e-9 for nu in
// (0, 12] across x in (0, 700] (for nu in (12, 20] the mid-x integral
// representation loses ~e^{nu pi/2} eps_80 to cancellation and accuracy
// degrades toward ~1e-4 by nu = 20; values are still returned).
#pragma once

#include <complex>

namespace dsi {

struct ImagOrderParams {
    double nu;  // imaginary-order parameter, nu > 0
    double x;   // argument, x > 0
};

// K_{i nu}(x). Throws std::domain_error outside nu in (0, 30], x > 0 and
// std::range_error for x > 700 where the result underflows.
double bessel_k_imag(const ImagOrderParams& p);
double bessel_k_imag(double nu, double x);

// e^x K_{i nu}(x): the scaled form survives to arbitrarily large x (needed
// for asymptotic-regime checks where e^{-x} alone underflows).
double bessel_k_imag_scaled(const ImagOrderParams& p);
double bessel_k_imag_scaled(double nu, double x);

// H^(kind)_{i nu}(x), kind in {1, 2}.
std::complex<double> hankel_imag(int kind, const ImagOrderParams& p);
std::complex<double> hankel_imag(int kind, double nu, double x);

// d/dx H^(kind)_{i nu}(x), via the order-recurrence (the companion
// order i nu - 1 is evaluated through the same machinery).
std::complex<double> hankel_imag_deriv(int kind, const ImagOrderParams& p);
std::complex<double> hankel_imag_deriv(int kind, double nu, double x);

// log Gamma(1 + i nu). Its argument sets the phase of the small-x
// oscillation of K_{i nu} and its modulus obeys
// |Gamma(1 + i nu)|^2 = pi nu / sinh(pi nu).
std::complex<double> log_gamma_one_plus_i(double nu);

}  // namespace dsi
