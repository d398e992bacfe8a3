#include "varstring/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "varstring/errors.hpp"
#include "varstring/numerics.hpp"

namespace varstring {

namespace {

double sq(double v) { return v * v; }

// Linear interpolation against the filled prefix xs[0..count-1].
double interp_prefix(const std::vector<double>& xs, const std::vector<double>& fp,
                     std::size_t count, double xi) {
    auto it = std::upper_bound(xs.begin(), xs.begin() + count, xi);
    if (it == xs.begin() || it == xs.begin() + count)
        throw GridTooCoarse("reflection pulls outside the filled table prefix");
    const std::size_t j = std::size_t(it - xs.begin()) - 1;
    const double w = (xi - xs[j]) / (xs[j + 1] - xs[j]);
    return fp[j] + w * (fp[j + 1] - fp[j]);
}

} // namespace

double CharacteristicTable::fprime(double xi) const {
    const double slack = 1e-9 * (1.0 + std::abs(xiMax));
    if (xi < xs.front() - slack || xi > xs.back() + slack)
        throw OutOfDomain("characteristic coordinate outside table range");
    if (transparent && xi > L + 1e-12) return 0.0;
    xi = std::clamp(xi, xs.front(), xs.back());
    auto it = std::upper_bound(xs.begin(), xs.end(), xi);
    if (it == xs.begin()) return fp.front();
    if (it == xs.end()) return fp.back();
    const std::size_t j = std::size_t(it - xs.begin()) - 1;
    const double w = (xi - xs[j]) / (xs[j + 1] - xs[j]);
    return fp[j] + w * (fp[j + 1] - fp[j]);
}

CharacteristicTable build_table(const InitialData& init,
                                const LengthProfile& profile,
                                const DampingConfig& damping,
                                double h, double ximax) {
    CharacteristicTable tb;
    tb.profile = profile;
    tb.damping = damping;
    tb.L = profile.L;
    tb.transparent = (damping.regime == Regime::Transparent);

    const double L = profile.L;
    if (h <= 0.0) h = 1e-4 * L;
    tb.h = h;

    const double tHi = profile.T + 0.9e-3 * (1.0 + profile.T);
    const auto alphaFn = [&](double t) { return t + profile.ell(t); };
    const auto betaFn = [&](double t) { return t - profile.ell(t); };
    const double alphaHi = alphaFn(tHi);

    if (ximax <= 0.0) ximax = std::min(alpha(profile, profile.T) + h, alphaHi);
    if (ximax > alphaHi)
        throw DomainExceeded("ximax not reachable within the profile horizon");
    if (ximax < L + 2.0 * h)
        throw Error("ximax must leave room past the seed interval");
    tb.xiMax = ximax;

    double ellMin = L;
    for (int i = 0; i <= 2048; ++i)
        ellMin = std::min(ellMin, profile.ell(tHi * double(i) / 2048.0));
    const long n = long(std::ceil((ximax + L) / h));
    const double step = (ximax + L) / double(n);
    if (ellMin <= step)
        throw GridTooCoarse("grid step exceeds the shortest string length");

    tb.xs.resize(std::size_t(n) + 1);
    for (long i = 0; i <= n; ++i) tb.xs[std::size_t(i)] = -L + double(i) * step;
    tb.xs.back() = ximax;

    // Jump and kink locations of f': the extension kinks at 0 and +-k, the
    // seed/reflection boundary at L, and their forward images through
    // successive reflections. Snap the nearest grid node onto each so the
    // piecewise-linear table keeps the breaks sharp.
    std::vector<double> snaps{0.0, L};
    for (double k : init.kinks) {
        snaps.push_back(k);
        snaps.push_back(-k);
    }
    const double betaHi = betaFn(tHi);
    for (std::size_t i = 0; i < snaps.size() && snaps.size() < 32; ++i) {
        const double xi = snaps[i];
        if (xi < -L || xi >= betaHi) continue;
        const double t = invert_increasing(betaFn, 0.0, tHi, xi, 1e-12);
        const double img = alphaFn(t);
        if (img < ximax - step) snaps.push_back(img);
    }
    std::sort(snaps.begin(), snaps.end());
    for (double s : snaps) {
        const long idx = std::lround((s + L) / step);
        if (idx <= 0 || idx >= n) continue;
        const std::size_t j = std::size_t(idx);
        if (std::abs(tb.xs[j] - s) >= 0.5 * step) continue;
        if (tb.xs[j - 1] < s && s < tb.xs[j + 1]) tb.xs[j] = s;
    }

    tb.fp.resize(tb.xs.size());
    const double refl = (1.0 - damping.eta) / (1.0 + damping.eta);
    std::size_t i = 0;
    for (; i < tb.xs.size() && tb.xs[i] <= L; ++i)
        tb.fp[i] = 0.5 * data_extension(init, tb.xs[i]);
    for (; i < tb.xs.size(); ++i) {
        if (tb.transparent) {
            tb.fp[i] = 0.0;
            continue;
        }
        const double t = invert_increasing(alphaFn, 0.0, tHi, tb.xs[i], 1e-12);
        const double lp = profile.ellPrime(t);
        const double b = tb.xs[i] - 2.0 * profile.ell(t);
        tb.fp[i] = -refl * (1.0 - lp) / (1.0 + lp) * interp_prefix(tb.xs, tb.fp, i, b);
    }
    return tb;
}

std::pair<double, double> oracle_ut_ux(const CharacteristicTable& table,
                                       double x, double t) {
    const double slack = 1e-9 * (1.0 + table.L);
    if (x < -slack || x > table.profile.ell(t) + slack)
        throw OutOfDomain("x outside [0, l(t)]");
    const double fa = table.fprime(t + x);
    const double fb = table.fprime(t - x);
    return {fa - fb, fa + fb};
}

double oracle_energy(const CharacteristicTable& table, double t, double /*quadTol*/) {
    double a = beta(table.profile, t);
    double b = alpha(table.profile, t);
    if (table.transparent && a >= table.L) return 0.0;
    a = std::clamp(a, table.xs.front(), table.xs.back());
    b = std::clamp(b, table.xs.front(), table.xs.back());
    if (b <= a) return 0.0;

    const auto& xs = table.xs;
    const auto& fp = table.fp;
    const std::size_t i0 =
        std::size_t(std::upper_bound(xs.begin(), xs.end(), a) - xs.begin());
    const std::size_t i1 =
        std::size_t(std::lower_bound(xs.begin(), xs.end(), b) - xs.begin());
    const double fa2 = sq(table.fprime(a));
    const double fb2 = sq(table.fprime(b));
    if (i0 >= i1) return 0.5 * (fa2 + fb2) * (b - a);

    double sum = 0.5 * (fa2 + sq(fp[i0])) * (xs[i0] - a);
    for (std::size_t i = i0; i + 1 < i1; ++i)
        sum += 0.5 * (sq(fp[i]) + sq(fp[i + 1])) * (xs[i + 1] - xs[i]);
    sum += 0.5 * (sq(fp[i1 - 1]) + fb2) * (b - xs[i1 - 1]);
    return sum;
}

} // namespace varstring
