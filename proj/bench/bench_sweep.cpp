// Benchmark for the sweep kernels: times the OpenMP entry points against
// their serial reference twins and confirms the outputs are bit-identical
// while doing so. Usage: dsi_bench [resolution] [trace_points] [repeats]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dsi/radial.hpp"
#include "dsi/sweep.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_best_ms(int repeats, const F& f) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = clock_type::now();
        f();
        const double ms =
            std::chrono::duration<double, std::milli>(clock_type::now() - t0)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

template <typename T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

void report(const char* kernel, double serial_ms, double parallel_ms,
            bool identical) {
    std::printf("%-14s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
                kernel, serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "bit-identical" : "OUTPUTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const int resolution = argc > 1 ? std::atoi(argv[1]) : 60;
    const int points = argc > 2 ? std::atoi(argv[2]) : 200000;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

#ifdef _OPENMP
    std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; the parallel entry points run serially\n");
#endif

    bool all_identical = true;

    {
        dsi::PhaseGridResult ser, par;
        const double lo = -2.0, hi = 2.0;
        const double serial_ms = time_best_ms(repeats, [&] {
            ser = dsi::phase_grid_serial(lo, hi, lo, hi, resolution);
        });
        const double parallel_ms = time_best_ms(repeats, [&] {
            par = dsi::phase_grid(lo, hi, lo, hi, resolution, 0);
        });
        const bool identical =
            same_bits(ser.g1, par.g1) && same_bits(ser.g2, par.g2) &&
            same_bits(ser.region, par.region) &&
            same_bits(ser.lambda0, par.lambda0) &&
            same_bits(ser.lambda1, par.lambda1) &&
            same_bits(ser.nu0, par.nu0) && same_bits(ser.nu1, par.nu1);
        all_identical = all_identical && identical;
        report("phase_grid", serial_ms, parallel_ms, identical);
    }

    {
        const dsi::ChannelParams p = dsi::ChannelParams::from_nu(3, 1.0, 1.0);
        dsi::SmatrixTrace ser, par;
        const double serial_ms = time_best_ms(repeats, [&] {
            ser = dsi::smatrix_trace_serial(p, 8.0, points);
        });
        const double parallel_ms = time_best_ms(repeats, [&] {
            par = dsi::smatrix_trace(p, 8.0, points, 0);
        });
        const bool identical =
            same_bits(ser.k, par.k) &&
            ser.s.size() == par.s.size() &&
            std::memcmp(ser.s.data(), par.s.data(),
                        ser.s.size() * sizeof(ser.s[0])) == 0;
        all_identical = all_identical && identical;
        report("smatrix_trace", serial_ms, parallel_ms, identical);
    }

    {
        std::vector<double> nus, xs;
        for (int i = 0; i < 24; ++i) nus.push_back(0.25 + 0.4 * i);
        for (int j = 0; j < 48; ++j) xs.push_back(0.05 * std::pow(1.2, j));
        std::vector<double> ser, par;
        const double serial_ms = time_best_ms(
            repeats, [&] { ser = dsi::bessel_grid_serial(nus, xs); });
        const double parallel_ms = time_best_ms(
            repeats, [&] { par = dsi::bessel_grid(nus, xs, 0); });
        const bool identical = same_bits(ser, par);
        all_identical = all_identical && identical;
        report("bessel_grid", serial_ms, parallel_ms, identical);
    }

    return all_identical ? 0 : 1;
}
