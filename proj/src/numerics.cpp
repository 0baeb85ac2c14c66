#include "dsi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dsi {

namespace {

GaussLegendre compute_gl(int order) {
    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    const long double pi = 3.141592653589793238462643383279503L;
    // Newton iteration from the Chebyshev-like initial guess; the rule is
    // symmetric so only the lower half is solved.
    for (int i = 0; i < (order + 1) / 2; ++i) {
        long double x = std::cos(pi * (i + 0.75L) / (order + 0.5L));
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= order; ++k) {
                long double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            long double dp = order * (x * p1 - p0) / (x * x - 1.0L);
            long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L * std::max(1.0L, std::abs(x))) break;
        }
        long double p0 = 1.0L, p1 = x;
        for (int k = 2; k <= order; ++k) {
            long double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        long double dp = order * (x * p1 - p0) / (x * x - 1.0L);
        gl.nodes[i] = -x;
        gl.nodes[order - 1 - i] = x;
        long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        gl.weights[i] = w;
        gl.weights[order - 1 - i] = w;
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
    return it->second;
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double rel_tol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0))
        throw std::invalid_argument("brent_root: interval does not bracket a sign change");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                           rel_tol * std::max(1.0, std::abs(b)) * 0.5;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = e = m;
        } else {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2 * m * s;
                q = 1 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2 * m * qq * (qq - r) - (b - a) * (r - 1));
                q = (qq - 1) * (r - 1) * (s - 1);
            }
            if (p > 0)
                q = -q;
            else
                p = -p;
            if (2 * p < std::min(3 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("extrapolate_to_zero: bad sample arrays");
    std::vector<double> t(y.begin(), y.end());
    const std::size_t n = t.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            t[i] = t[i + 1] + (t[i + 1] - t[i]) * x[i + level] / (x[i] - x[i + level]);
    return t[0];
}

TridiagPencil::TridiagPencil(std::vector<double> diag, std::vector<double> off,
                             std::vector<double> mass)
    : diag_(std::move(diag)), off_(std::move(off)), mass_(std::move(mass)) {
    if (diag_.empty() || off_.size() + 1 != diag_.size() || mass_.size() != diag_.size())
        throw std::invalid_argument("TridiagPencil: inconsistent array sizes");
    for (double m : mass_)
        if (!(m > 0)) throw std::invalid_argument("TridiagPencil: mass must be positive");
}

int TridiagPencil::count_below(double E) const {
    // LDLt pivots of (A - E M); the number of negative pivots equals the
    // number of pencil eigenvalues below E (Sylvester inertia, M > 0).
    const double tiny = 1e-300;
    int count = 0;
    double d = diag_[0] - E * mass_[0];
    if (std::abs(d) < tiny) d = -tiny;
    if (d < 0) ++count;
    for (std::size_t i = 1; i < diag_.size(); ++i) {
        d = (diag_[i] - E * mass_[i]) - off_[i - 1] * off_[i - 1] / d;
        if (std::abs(d) < tiny) d = -tiny;
        if (d < 0) ++count;
    }
    return count;
}

std::pair<double, double> TridiagPencil::gershgorin() const {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < diag_.size(); ++i) {
        double radius = 0;
        if (i > 0) radius += std::abs(off_[i - 1]);
        if (i + 1 < diag_.size()) radius += std::abs(off_[i]);
        lo = std::min(lo, (diag_[i] - radius) / mass_[i]);
        hi = std::max(hi, (diag_[i] + radius) / mass_[i]);
    }
    const double pad = 1e-12 * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
    return {lo - pad, hi + pad};
}

double TridiagPencil::bisect_kth(int k, double lo, double hi, double rel_tol) const {
    // Invariant: count_below(lo) < k <= count_below(hi).
    for (int it = 0; it < 220; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (count_below(mid) >= k)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= rel_tol * std::max(1e-300, std::min(std::abs(lo), std::abs(hi))))
            break;
    }
    return lo + 0.5 * (hi - lo);
}

std::vector<double> TridiagPencil::lowest(int k, double rel_tol) const {
    k = std::min<int>(k, size());
    auto [lo, hi] = gershgorin();
    std::vector<double> out;
    out.reserve(k);
    for (int j = 1; j <= k; ++j) out.push_back(bisect_kth(j, lo, hi, rel_tol));
    return out;
}

std::vector<double> TridiagPencil::in_range(double lo, double hi, double rel_tol) const {
    const int below_lo = count_below(lo), below_hi = count_below(hi);
    auto [glo, ghi] = gershgorin();
    glo = std::max(glo, lo);
    ghi = std::min(ghi, hi);
    std::vector<double> out;
    out.reserve(below_hi - below_lo);
    for (int j = below_lo + 1; j <= below_hi; ++j) out.push_back(bisect_kth(j, glo, ghi, rel_tol));
    return out;
}

}  // namespace dsi
