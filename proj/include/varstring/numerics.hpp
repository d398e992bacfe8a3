#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <future>
#include <vector>

#include "varstring/errors.hpp"

namespace varstring {

// 15-point Gauss-Legendre rule on [-1, 1]; node 0 is the midpoint, the
// remaining entries are the positive abscissas of the symmetric pairs.
inline constexpr std::array<double, 8> kGL15Nodes = {
    0.0,
    0.201194093997434522300628303394596,
    0.394151347077563369897207370981045,
    0.570972172608538847537226737253911,
    0.724417731360170047416186054613938,
    0.848206583410427216200648320774217,
    0.937273392400705904307758947710209,
    0.987992518020485428489565718586613,
};
inline constexpr std::array<double, 8> kGL15Weights = {
    0.202578241925561272880620199967519,
    0.198431485327111576456118326443839,
    0.186161000015562211026800561866423,
    0.166269205816993933553200860481209,
    0.139570677926154314447804794511028,
    0.107159220467171935011869546685869,
    0.070366047488108124709267416450667,
    0.030753241996117268354628393577204,
};

template <class R, class F>
R gl15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    R acc = kGL15Weights[0] * f(c);
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGL15Nodes[i];
        acc += kGL15Weights[i] * (f(c - dx) + f(c + dx));
    }
    return acc * h;
}

struct QuadratureOptions {
    double absTol = 1e-10;    // absolute tolerance for the whole interval
    int initialPanels = 8;    // uniform panels laid down before refinement
    int maxDepth = 40;        // bisection levels allowed per panel
    long maxPanels = 1 << 20; // refinement budget (panel evaluations)
};

namespace detail {

template <class R, class F>
R adapt_panel(F& f, double a, double b, double tol, int depth,
              const QuadratureOptions& opt, long& used, const R& whole) {
    used += 2;
    if (used > opt.maxPanels)
        throw QuadratureFailure("adaptive quadrature exceeded panel budget");
    const double m = 0.5 * (a + b);
    const R left = gl15<R>(f, a, m);
    const R right = gl15<R>(f, m, b);
    const R sum = left + right;
    if (std::abs(sum - whole) <= tol || depth >= opt.maxDepth)
        return sum;
    return adapt_panel<R>(f, a, m, 0.5 * tol, depth + 1, opt, used, left) +
           adapt_panel<R>(f, m, b, 0.5 * tol, depth + 1, opt, used, right);
}

} // namespace detail

// Deterministic adaptive composite quadrature: fixed initial panels, each
// refined by bisection until the two-half estimate settles within its
// share of the tolerance. R is double or std::complex<double>.
template <class R, class F>
R integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    if (a == b) return R{};
    if (b < a) throw QuadratureFailure("integration bounds out of order");
    const int n0 = std::max(1, opt.initialPanels);
    const double w = (b - a) / n0;
    long used = 0;
    R total{};
    for (int k = 0; k < n0; ++k) {
        const double pa = a + k * w;
        const double pb = (k + 1 == n0) ? b : a + (k + 1) * w;
        ++used;
        const R whole = gl15<R>(f, pa, pb);
        total += detail::adapt_panel<R>(f, pa, pb, opt.absTol / n0, 0, opt,
                                        used, whole);
    }
    return total;
}

// Bisection inverse of a strictly increasing function: x in [lo, hi] with
// f(x) = y, resolved to xtol in the argument. Targets outside the bracket
// clamp to the nearer endpoint.
template <class F>
double invert_increasing(F&& f, double lo, double hi, double y,
                         double xtol = 1e-12) {
    if (y <= f(lo)) return lo;
    if (y >= f(hi)) return hi;
    while (hi - lo > xtol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Piecewise cubic Hermite interpolant with prescribed node derivatives.
class HermiteTable {
public:
    std::vector<double> x, y, d;

    double xmin() const { return x.front(); }
    double xmax() const { return x.back(); }

    double eval(double xi) const {
        const std::size_t i = cell(xi);
        const double h = x[i + 1] - x[i];
        const double s = (xi - x[i]) / h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * y[i] + (s3 - 2 * s2 + s) * h * d[i] +
               (-2 * s3 + 3 * s2) * y[i + 1] + (s3 - s2) * h * d[i + 1];
    }

    double deriv(double xi) const {
        const std::size_t i = cell(xi);
        const double h = x[i + 1] - x[i];
        const double s = (xi - x[i]) / h;
        const double s2 = s * s;
        return ((6 * s2 - 6 * s) * (y[i] - y[i + 1]) / h) +
               (3 * s2 - 4 * s + 1) * d[i] + (3 * s2 - 2 * s) * d[i + 1];
    }

    // Fritsch-Carlson limiter: rescales node derivatives where needed so a
    // table with increasing values yields a strictly increasing interpolant.
    void clamp_monotone() {
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            const double delta = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
            if (delta == 0.0) {
                d[i] = d[i + 1] = 0.0;
                continue;
            }
            const double a = d[i] / delta, b = d[i + 1] / delta;
            if (a < 0.0) d[i] = 0.0;
            if (b < 0.0) d[i + 1] = 0.0;
            const double r = a * a + b * b;
            if (r > 9.0) {
                const double tau = 3.0 / std::sqrt(r);
                d[i] = tau * a * delta;
                d[i + 1] = tau * b * delta;
            }
        }
    }

private:
    std::size_t cell(double xi) const {
        const double slack = 1e-9 * (x.back() - x.front());
        if (xi < x.front() - slack || xi > x.back() + slack)
            throw OutOfDomain("interpolation query outside table range");
        auto it = std::upper_bound(x.begin(), x.end(), xi);
        std::size_t i = (it == x.begin()) ? 0 : std::size_t(it - x.begin()) - 1;
        return std::min(i, x.size() - 2);
    }
};

// Piecewise-linear interpolation over sorted knots.
inline double lerp_table(const std::vector<double>& xs,
                         const std::vector<double>& ys, double xi) {
    const double slack = 1e-9 * (xs.back() - xs.front());
    if (xi < xs.front() - slack || xi > xs.back() + slack)
        throw OutOfDomain("interpolation query outside table range");
    auto it = std::upper_bound(xs.begin(), xs.end(), xi);
    std::size_t i = (it == xs.begin()) ? 0 : std::size_t(it - xs.begin()) - 1;
    i = std::min(i, xs.size() - 2);
    const double s = (xi - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + s * (ys[i + 1] - ys[i]);
}

// Index-addressed parallel loop; results keyed by index stay deterministic
// regardless of scheduling. threads <= 1 runs inline.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int k = std::min(threads, n);
    std::atomic<int> next{0};
    std::vector<std::future<void>> tasks;
    tasks.reserve(std::size_t(k));
    for (int t = 0; t < k; ++t)
        tasks.push_back(std::async(std::launch::async, [&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        }));
    for (auto& task : tasks) task.get();
}

} // namespace varstring
