// Grid sweeps: one per-index cell function per kernel, shared by the
// OpenMP entry point and its serial reference twin. Every iteration writes
// only its own slot of a pre-sized buffer and performs the same arithmetic
// regardless of scheduling, which is what makes the twins bit-identical.
#include "dsi/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dsi/imag_bessel.hpp"

namespace dsi {

namespace {

constexpr double nan_d = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, total), either serially or across OpenMP
// threads. Exceptions thrown by a cell must not unwind through the parallel
// region, so the first one is captured and rethrown after the join; later
// iterations see the flag and skip their work.
template <typename Body>
void for_each_index(int total, int threads, bool parallel, const Body& body) {
    if (!parallel) {
        for (int i = 0; i < total; ++i) body(i);
        return;
    }
    std::exception_ptr failure = nullptr;
    std::atomic<bool> failed{false};
#ifdef _OPENMP
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#else
    (void)threads;
#endif
    for (int i = 0; i < total; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            body(i);
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

void require_finite_range(double lo, double hi, const char* what) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
        throw std::invalid_argument(std::string(what) +
                                    " range must be finite with hi >= lo");
}

PhaseGridResult sized_phase_grid(int resolution) {
    if (resolution < 2)
        throw std::invalid_argument("phase grid needs resolution >= 2");
    PhaseGridResult out;
    out.resolution = resolution;
    const std::size_t total =
        static_cast<std::size_t>(resolution) * resolution;
    out.g1.resize(total);
    out.g2.resize(total);
    out.region.resize(total);
    out.lambda0.assign(total, nan_d);
    out.lambda1.assign(total, nan_d);
    out.nu0.assign(total, nan_d);
    out.nu1.assign(total, nan_d);
    return out;
}

void fill_phase_cell(PhaseGridResult& out, double g1_lo, double g1_step,
                     double g2_lo, double g2_step, int idx) {
    const int i = idx / out.resolution;
    const int j = idx % out.resolution;
    const double a = g1_lo + g1_step * i;
    const double b = g2_lo + g2_step * j;
    out.g1[idx] = a;
    out.g2[idx] = b;
    const PhaseVerdict v = classify_phase({a, b});
    out.region[idx] = static_cast<int>(v.region);
    if (!v.channels.empty()) {
        out.lambda0[idx] = v.channels[0].lambda;
        out.nu0[idx] = *v.channels[0].nu;
    }
    if (v.channels.size() >= 2) {
        out.lambda1[idx] = v.channels[1].lambda;
        out.nu1[idx] = *v.channels[1].nu;
    }
}

PhaseGridResult phase_grid_impl(double g1_lo, double g1_hi, double g2_lo,
                                double g2_hi, int resolution, int threads,
                                bool parallel) {
    require_finite_range(g1_lo, g1_hi, "g1");
    require_finite_range(g2_lo, g2_hi, "g2");
    PhaseGridResult out = sized_phase_grid(resolution);
    const double g1_step = (g1_hi - g1_lo) / (resolution - 1);
    const double g2_step = (g2_hi - g2_lo) / (resolution - 1);
    for_each_index(resolution * resolution, threads, parallel, [&](int idx) {
        fill_phase_cell(out, g1_lo, g1_step, g2_lo, g2_step, idx);
    });
    return out;
}

SmatrixTrace smatrix_trace_impl(const ChannelParams& p, double decades,
                                int points, int threads, bool parallel) {
    if (!(decades > 0.0) || !std::isfinite(decades))
        throw std::invalid_argument("decades must be positive and finite");
    if (points < 2)
        throw std::invalid_argument("S-matrix trace needs at least 2 points");
    SmatrixTrace out;
    out.k.resize(points);
    out.s.resize(points);
    for_each_index(points, threads, parallel, [&](int idx) {
        const double frac =
            static_cast<double>(idx) / (points - 1) - 0.5;
        const double k = p.kappa_star * std::pow(10.0, decades * frac);
        const ScatteringPoint pt = s_matrix(p, k);
        out.k[idx] = pt.k;
        out.s[idx] = pt.s_value;
    });
    return out;
}

std::vector<double> bessel_grid_impl(const std::vector<double>& nus,
                                     const std::vector<double>& xs,
                                     int threads, bool parallel) {
    if (nus.empty() || xs.empty())
        throw std::invalid_argument("bessel grid needs non-empty axes");
    std::vector<double> out(nus.size() * xs.size());
    const int total = static_cast<int>(out.size());
    const int cols = static_cast<int>(xs.size());
    for_each_index(total, threads, parallel, [&](int idx) {
        const double nu = nus[static_cast<std::size_t>(idx / cols)];
        const double x = xs[static_cast<std::size_t>(idx % cols)];
        out[idx] = bessel_k_imag(nu, x);
    });
    return out;
}

}  // namespace

PhaseGridResult phase_grid(double g1_lo, double g1_hi, double g2_lo,
                           double g2_hi, int resolution, int threads) {
    return phase_grid_impl(g1_lo, g1_hi, g2_lo, g2_hi, resolution, threads,
                           true);
}

PhaseGridResult phase_grid_serial(double g1_lo, double g1_hi, double g2_lo,
                                  double g2_hi, int resolution) {
    return phase_grid_impl(g1_lo, g1_hi, g2_lo, g2_hi, resolution, 0, false);
}

SmatrixTrace smatrix_trace(const ChannelParams& p, double decades, int points,
                           int threads) {
    return smatrix_trace_impl(p, decades, points, threads, true);
}

SmatrixTrace smatrix_trace_serial(const ChannelParams& p, double decades,
                                  int points) {
    return smatrix_trace_impl(p, decades, points, 0, false);
}

std::vector<double> bessel_grid(const std::vector<double>& nus,
                                const std::vector<double>& xs, int threads) {
    return bessel_grid_impl(nus, xs, threads, true);
}

std::vector<double> bessel_grid_serial(const std::vector<double>& nus,
                                       const std::vector<double>& xs) {
    return bessel_grid_impl(nus, xs, 0, false);
}

}  // namespace dsi
