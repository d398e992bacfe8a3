#include "varstring/moore.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace varstring {

namespace {

void check_closed_domain(const MooreMap& m, double xi) {
    const double slack = 1e-9 * (1.0 + std::abs(xi) + m.L);
    if (xi < m.xiMin - slack)
        throw OutOfDomain("map queried below -L");
    // For a shrinking linear profile the logarithm argument L + v xi
    // reaches 0 at xiMax itself, so that endpoint is excluded.
    if (m.source == MooreSource::ClosedFormLinear &&
        std::isfinite(m.xiMax) && xi >= m.xiMax)
        throw DomainExceeded("L + v xi <= 0 at the queried point");
    if (xi > m.xiMax + slack)
        throw DomainExceeded("map queried past the domain end");
}

// Closed form for the tangent linear profile l(t) = L + v t; v = 0
// degenerates to xi / L.
std::pair<std::function<double(double)>, std::function<double(double)>>
tangent_closed_form(double L, double v) {
    if (v == 0.0)
        return {[L](double xi) { return xi / L; },
                [L](double) { return 1.0 / L; }};
    const double c = 2.0 / std::log((1.0 + v) / (1.0 - v));
    return {[L, v, c](double xi) { return c * std::log1p(v * xi / L); },
            [L, v, c](double xi) { return c * v / (L + v * xi); }};
}

struct Seed {
    std::function<double(double)> phi, phiPrime;
};

Seed build_seed(const LengthProfile& p, SeedKind kind) {
    const double L = p.L;
    const double lp0 = p.ellPrime(0.0);
    const double ratio = (1.0 + lp0) / (1.0 - lp0);
    Seed s;
    if (kind == SeedKind::TangentClosedForm) {
        auto [phi, phiPrime] = tangent_closed_form(L, lp0);
        s.phi = std::move(phi);
        s.phiPrime = std::move(phiPrime);
    } else {
        HermiteTable knots;
        knots.x = {-L, 0.0, L};
        knots.y = {-1.0, 0.0, 1.0};
        knots.d = {std::sqrt(ratio) / L, 1.0 / L, 1.0 / (std::sqrt(ratio) * L)};
        knots.clamp_monotone();
        s.phi = [knots](double xi) { return knots.eval(xi); };
        s.phiPrime = [knots](double xi) { return knots.deriv(xi); };
    }
    // Matching conditions: value gap 2 across [-L, L], normalization at 0,
    // endpoint derivative ratio, positivity.
    if (std::abs(s.phi(L) - s.phi(-L) - 2.0) > 1e-9 ||
        std::abs(s.phi(0.0)) > 1e-9)
        throw SeedMismatch("seed value gap or normalization off");
    if (std::abs(ratio * s.phiPrime(L) - s.phiPrime(-L)) >
        1e-9 * (1.0 + s.phiPrime(-L)))
        throw SeedMismatch("seed endpoint derivatives violate the "
                           "differentiated identity at t = 0");
    for (int i = 0; i <= 512; ++i) {
        const double xi = -L + 2.0 * L * double(i) / 512.0;
        if (!(s.phiPrime(xi) > 0.0))
            throw SeedMismatch("seed derivative not positive");
    }
    return s;
}

} // namespace

double MooreMap::phi(double xi) const {
    if (source == MooreSource::NumericRecursion) return table.eval(xi);
    check_closed_domain(*this, xi);
    return phiFn(xi);
}

double MooreMap::phiPrime(double xi) const {
    if (source == MooreSource::NumericRecursion) return table.deriv(xi);
    check_closed_domain(*this, xi);
    return phiPrimeFn(xi);
}

MooreMap moore_constant(double L) {
    if (L <= 0.0) throw Collapse("length must be positive");
    MooreMap m;
    m.source = MooreSource::ClosedFormConstant;
    m.L = L;
    m.xiMin = -L;
    m.xiMax = std::numeric_limits<double>::infinity();
    m.phiFn = [L](double xi) { return xi / L; };
    m.phiPrimeFn = [L](double) { return 1.0 / L; };
    return m;
}

MooreMap moore_linear(double L, double v) {
    if (L <= 0.0) throw Collapse("length must be positive");
    if (v == 0.0 || std::abs(v) >= 1.0)
        throw SpeedLimit("linear map needs 0 < |v| < 1");
    MooreMap m;
    m.source = MooreSource::ClosedFormLinear;
    m.L = L;
    m.xiMin = -L;
    m.xiMax = v < 0.0 ? -L / v : std::numeric_limits<double>::infinity();
    auto [phi, phiPrime] = tangent_closed_form(L, v);
    m.phiFn = std::move(phi);
    m.phiPrimeFn = std::move(phiPrime);
    return m;
}

MooreMap moore_numeric(const LengthProfile& p, SeedKind kind, double xiMax,
                       int gridPerUnit, int maxBounces) {
    const double L = p.L;
    const double step0 = 1.0 / double(gridPerUnit);
    const double tHi = p.T + 0.9e-3 * (1.0 + p.T);
    const double alphaHi = tHi + p.ell(tHi);
    if (xiMax <= 0.0) xiMax = std::min(p.T + p.ell(p.T) + step0, alphaHi);

    // Minimal length over the horizon bounds the bounce count and the
    // backstep distance 2 l(t) of each recursion application.
    double ellMin = L;
    for (int i = 0; i <= 2048; ++i)
        ellMin = std::min(ellMin, p.ell(tHi * double(i) / 2048.0));
    if (ellMin <= step0)
        throw GridTooCoarse("grid step exceeds the minimal interval length");
    if (xiMax < L + 2.0 * step0)
        throw Error("xiMax must extend past the seed interval");
    if (xiMax > alphaHi)
        throw DomainExceeded("xiMax not reachable: alpha(T) < xiMax");
    if ((xiMax - L) / (2.0 * ellMin) > double(maxBounces))
        throw RecursionDepth("xiMax implies too many characteristic bounces");

    const Seed seed = build_seed(p, kind);

    const int n = std::max(2, int(std::ceil((xiMax + L) * gridPerUnit)));
    const double step = (xiMax + L) / double(n);
    std::vector<double> xs(std::size_t(n) + 1), ys(std::size_t(n) + 1),
        ds(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i) xs[std::size_t(i)] = -L + step * double(i);
    xs.back() = xiMax;

    // phi is only C^1 at the seed knots and at the seed/recursion glue, and
    // those kinks propagate along xi -> alpha(beta^-1(xi)). A kink inside a
    // cell costs first-order derivative accuracy, so pin each one to the
    // nearest interior node.
    {
        const auto alphaFn = [&](double tt) { return tt + p.ell(tt); };
        const auto betaFn = [&](double tt) { return tt - p.ell(tt); };
        std::vector<double> snaps;
        for (double s : {0.0, L}) {
            for (int bounce = 0; bounce < 64; ++bounce) {
                if (s >= xiMax - step) break;
                snaps.push_back(s);
                if (s > betaFn(tHi)) break;
                s = alphaFn(invert_increasing(betaFn, 0.0, tHi, s, 1e-12));
            }
        }
        std::sort(snaps.begin(), snaps.end());
        for (double s : snaps) {
            const auto idx = std::size_t(std::lround((s + L) / step));
            if (idx == 0 || idx >= std::size_t(n)) continue;
            if (std::abs(xs[idx] - s) < 0.5 * step && xs[idx - 1] < s &&
                s < xs[idx + 1])
                xs[idx] = s;
        }
    }

    // Hermite evaluation against the filled prefix of the table.
    auto interp = [&](double b, int filled) -> std::pair<double, double> {
        if (b <= L) return {seed.phi(b), seed.phiPrime(b)};
        auto it = std::upper_bound(xs.begin(), xs.begin() + filled, b);
        int j = int(it - xs.begin()) - 1;
        if (j + 1 >= filled)
            throw GridTooCoarse("recursion backstep lands on unfilled nodes");
        const double h = xs[j + 1] - xs[j];
        const double s = (b - xs[j]) / h, s2 = s * s, s3 = s2 * s;
        const double val = (2 * s3 - 3 * s2 + 1) * ys[j] +
                           (s3 - 2 * s2 + s) * h * ds[j] +
                           (-2 * s3 + 3 * s2) * ys[j + 1] +
                           (s3 - s2) * h * ds[j + 1];
        const double der = (6 * s2 - 6 * s) * (ys[j] - ys[j + 1]) / h +
                           (3 * s2 - 4 * s + 1) * ds[j] +
                           (3 * s2 - 2 * s) * ds[j + 1];
        return {val, der};
    };

    for (int i = 0; i <= n; ++i) {
        const double xi = xs[std::size_t(i)];
        if (xi <= L) {
            ys[std::size_t(i)] = seed.phi(xi);
            ds[std::size_t(i)] = seed.phiPrime(xi);
            continue;
        }
        const double t = invert_increasing(
            [&](double tt) { return tt + p.ell(tt); }, 0.0, tHi, xi, 1e-12);
        const double b = t - p.ell(t);
        const auto [pb, db] = interp(b, i);
        ys[std::size_t(i)] = pb + 2.0;
        ds[std::size_t(i)] =
            db * (1.0 - p.ellPrime(t)) / (1.0 + p.ellPrime(t));
    }

    MooreMap m;
    m.source = MooreSource::NumericRecursion;
    m.L = L;
    m.xiMin = -L;
    m.xiMax = xiMax;
    m.table.x = std::move(xs);
    m.table.y = std::move(ys);
    m.table.d = std::move(ds);
    m.table.clamp_monotone();
    return m;
}

double moore_residual(const MooreMap& m, const LengthProfile& p, double t) {
    return m.phi(alpha(p, t)) - m.phi(beta(p, t)) - 2.0;
}

} // namespace varstring
