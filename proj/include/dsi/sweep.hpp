// Grid sweeps shared by the CLI and the benchmark: phase-diagram scans,
// S-matrix traces, and special-function grids. Each kernel has an
// OpenMP-parallel entry point and a serial reference twin; both write
// results by index into pre-sized buffers, so their outputs are required
// to match bit for bit (the tests assert exact equality).
#pragma once

#include <complex>
#include <vector>

#include "dsi/angular.hpp"
#include "dsi/radial.hpp"

namespace dsi {

struct PhaseGridResult {
    int resolution = 0;              // grid is resolution x resolution
    std::vector<double> g1, g2;      // row-major flattened coordinates
    std::vector<int> region;         // PhaseRegion values
    std::vector<double> lambda0, lambda1;  // NaN where not subcritical
    std::vector<double> nu0, nu1;          // NaN likewise
};

// threads <= 0 means the OpenMP default.
PhaseGridResult phase_grid(double g1_lo, double g1_hi, double g2_lo,
                           double g2_hi, int resolution, int threads);
PhaseGridResult phase_grid_serial(double g1_lo, double g1_hi, double g2_lo,
                                  double g2_hi, int resolution);

struct SmatrixTrace {
    std::vector<double> k;  // log-spaced over `decades`, centered on kappa_star
    std::vector<std::complex<double>> s;
};

SmatrixTrace smatrix_trace(const ChannelParams& p, double decades, int points,
                           int threads);
SmatrixTrace smatrix_trace_serial(const ChannelParams& p, double decades,
                                  int points);

// K_{i nu}(x) on the product grid, row-major over (nus x xs).
std::vector<double> bessel_grid(const std::vector<double>& nus,
                                const std::vector<double>& xs, int threads);
std::vector<double> bessel_grid_serial(const std::vector<double>& nus,
                                       const std::vector<double>& xs);

}  // namespace dsi
