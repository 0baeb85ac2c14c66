// Small numerical building blocks shared across the library: fixed-order
// Gauss-Legendre panels, Brent root bracketing, polynomial (Richardson)
// extrapolation, and a symmetric tridiagonal pencil eigensolver based on
// Sturm inertia counts.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace dsi {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order in long
// double via Newton iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// Integrate f over [a, b] with a single fixed-order panel.
template <typename F>
auto gl_panel(const F& f, long double a, long double b, int order = 32)
    -> decltype(f(a)) {
    const GaussLegendre& gl = gauss_legendre(order);
    const long double mid = (a + b) / 2, half = (b - a) / 2;
    decltype(f(a)) acc{};
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return acc * half;
}

// Integrate f over [a, b] split into n equal panels.
template <typename F>
auto gl_composite(const F& f, long double a, long double b, int panels, int order = 32)
    -> decltype(f(a)) {
    decltype(f(a)) acc{};
    const long double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        acc += gl_panel(f, a + p * w, a + (p + 1) * w, order);
    return acc;
}

// Brent-style root refinement on a bracketing interval [a, b] with
// f(a)*f(b) <= 0. Returns the root to the requested relative tolerance.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double rel_tol = 1e-15, int max_iter = 200);

// Neville polynomial extrapolation of samples (x_i, y_i) to x = 0. Used for
// Richardson extrapolation with x_i = h_i^order.
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

// Symmetric tridiagonal pencil A v = E M v with M diagonal positive:
//   A has diagonal `diag` and off-diagonal `off` (size n-1), M has diagonal
//   `mass`. Eigenvalues are found by bisection on the LDLt inertia count,
// which keeps per-eigenvalue *relative* accuracy even when the spectrum
// spans many orders of magnitude (a dense QR solve would lose small
// eigenvalues to its eps*||A|| absolute floor).
class TridiagPencil {
  public:
    TridiagPencil(std::vector<double> diag, std::vector<double> off,
                  std::vector<double> mass);

    // Number of pencil eigenvalues strictly below E.
    int count_below(double E) const;

    // The k lowest eigenvalues (k capped at n), each bisected to relative
    // tolerance rel_tol on an automatically determined Gershgorin bracket.
    std::vector<double> lowest(int k, double rel_tol = 1e-13) const;

    // All eigenvalues in [lo, hi), bisected to rel_tol. Count is exact
    // (inertia difference), so no level can be silently missed.
    std::vector<double> in_range(double lo, double hi, double rel_tol = 1e-13) const;

    std::pair<double, double> gershgorin() const;
    int size() const { return static_cast<int>(diag_.size()); }

  private:
    double bisect_kth(int k, double lo, double hi, double rel_tol) const;
    std::vector<double> diag_, off_, mass_;
};

}  // namespace dsi
