#include "varstring/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "varstring/numerics.hpp"

namespace varstring {

namespace {

const double kPi = std::acos(-1.0);

// Quadrature segments: data kinks mirrored through 0, which is itself a
// potential kink of the extension.
std::vector<double> segment_points(const InitialData& init, double L) {
    std::vector<double> pts{-L, 0.0, L};
    for (double k : init.kinks) {
        if (k > 0.0 && k < L) {
            pts.push_back(k);
            pts.push_back(-k);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double max_phi_prime(const MooreMap& moore, double a, double b) {
    double m = 0.0;
    for (int i = 0; i <= 256; ++i)
        m = std::max(m, moore.phiPrime(a + (b - a) * double(i) / 256.0));
    return m;
}

struct SeriesSums {
    Complex u;  // sum c_n e^{omega_n phi}
    Complex du; // sum omega_n c_n e^{omega_n phi}
};

// Both imaginary spacings are pi per unit mode index, so successive
// exponentials differ by the fixed rotation e^{i pi phi}; one complex exp
// seeds the recurrence.
SeriesSums series_sums(const ModeSet& ms, double phiVal) {
    SeriesSums s{};
    if (ms.indices.empty()) return s;
    Complex w = std::exp(ms.omegas.front() * phiVal);
    const Complex stepRot = std::polar(1.0, kPi * phiVal);
    for (std::size_t i = 0; i < ms.indices.size(); ++i) {
        const Complex term = ms.coeffs[i] * w;
        s.u += term;
        s.du += ms.omegas[i] * term;
        w *= stepRot;
    }
    return s;
}

void check_eval_point(double x) {
    if (x < -1e-12) throw OutOfDomain("evaluation point left of the fixed end");
}

double take_real(const Complex& z, const char* what) {
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real())))
        throw Error(std::string("imaginary residue too large in ") + what);
    return z.real();
}

} // namespace

Complex omega(int n, const DampingConfig& d) {
    if (d.regime == Regime::Transparent || !d.spectral_allowed())
        throw TransparentDamping("no exponent lattice at eta = 1");
    const double sigma = -0.5 * d.logAbsGamma;
    if (d.eta < 1.0) return {sigma, (2.0 * n + 1.0) * kPi / 2.0};
    return {sigma, double(n) * kPi};
}

ModeSet compute_coefficients(const InitialData& init, const MooreMap& moore,
                             const DampingConfig& damping, int N,
                             double quadTol, int threads) {
    if (N < 1) throw Error("mode truncation order must be positive");
    ModeSet ms;
    ms.damping = damping;
    ms.moore = moore;
    ms.L = moore.L;
    ms.N = N;
    const int lo = -N, hi = damping.eta < 1.0 ? N - 1 : N;
    for (int n = lo; n <= hi; ++n) {
        ms.indices.push_back(n);
        ms.omegas.push_back(omega(n, damping));
    }
    ms.coeffs.assign(ms.indices.size(), Complex{});

    const double L = moore.L;
    const auto pts = segment_points(init, L);
    const double phiMax = max_phi_prime(moore, -L, L);
    const int nseg = int(pts.size()) - 1;

    parallel_for(int(ms.indices.size()), threads, [&](int i) {
        const Complex w = ms.omegas[std::size_t(i)];
        const double freq = std::max(1.0, std::abs(w.imag()) * phiMax);
        const double period = 2.0 * kPi / freq;
        Complex integral{};
        for (int seg = 0; seg < nseg; ++seg) {
            const double a = pts[std::size_t(seg)];
            const double b = pts[std::size_t(seg) + 1];
            QuadratureOptions opt;
            opt.absTol = quadTol / nseg;
            opt.initialPanels =
                std::clamp(int(std::ceil((b - a) / period)), 2, 1 << 15);
            opt.maxDepth = 24;
            integral += integrate<Complex>(
                [&](double x) {
                    return data_extension(init, x) * std::exp(-w * moore.phi(x));
                },
                a, b, opt);
        }
        ms.coeffs[std::size_t(i)] = integral / (4.0 * w);
    });

    ms.parsevalSum = 2.0 * parseval_lhs(ms);
    return ms;
}

double eval_u(const ModeSet& ms, double x, double t) {
    check_eval_point(x);
    const Complex up = series_sums(ms, ms.moore.phi(t + x)).u;
    const Complex um = series_sums(ms, ms.moore.phi(t - x)).u;
    return take_real(up - um, "eval_u");
}

std::pair<double, double> eval_ut_ux(const ModeSet& ms, double x, double t) {
    check_eval_point(x);
    const double pa = ms.moore.phiPrime(t + x);
    const double pb = ms.moore.phiPrime(t - x);
    const Complex da = series_sums(ms, ms.moore.phi(t + x)).du;
    const Complex db = series_sums(ms, ms.moore.phi(t - x)).du;
    const double ut = take_real(pa * da - pb * db, "eval_ut");
    const double ux = take_real(pa * da + pb * db, "eval_ux");
    return {ut, ux};
}

double eval_ux(const ModeSet& ms, double x, double t) {
    return eval_ut_ux(ms, x, t).second;
}

double eval_ut(const ModeSet& ms, double x, double t) {
    return eval_ut_ux(ms, x, t).first;
}

double parseval_lhs(const ModeSet& ms) {
    double s = 0.0;
    for (std::size_t i = 0; i < ms.indices.size(); ++i)
        s += std::norm(ms.omegas[i] * ms.coeffs[i]);
    return s;
}

double parseval_rhs(const InitialData& init, const MooreMap& moore,
                    const DampingConfig& damping, double quadTol) {
    if (!damping.spectral_allowed())
        throw TransparentDamping("no coefficient identity at eta = 1");
    const double L = moore.L;
    const auto pts = segment_points(init, L);
    double total = 0.0;
    for (std::size_t seg = 0; seg + 1 < pts.size(); ++seg) {
        QuadratureOptions opt;
        opt.absTol = quadTol / double(pts.size() - 1);
        opt.initialPanels = 64;
        total += integrate<double>(
            [&](double x) {
                const double h = data_extension(init, x);
                return h * h *
                       std::exp(damping.logAbsGamma * moore.phi(x)) /
                       moore.phiPrime(x);
            },
            pts[seg], pts[seg + 1], opt);
    }
    return total / 8.0;
}

double tail_fraction(const ModeSet& ms) {
    if (ms.N < 8) throw Error("tail diagnostic needs N >= 8");
    std::vector<std::pair<double, int>> byFreq;
    byFreq.reserve(ms.indices.size());
    double total = 0.0;
    for (std::size_t i = 0; i < ms.indices.size(); ++i) {
        const double e = std::norm(ms.omegas[i] * ms.coeffs[i]);
        byFreq.push_back({std::abs(ms.omegas[i].imag()), int(i)});
        total += e;
    }
    if (total == 0.0) return 0.0;
    std::sort(byFreq.begin(), byFreq.end());
    const std::size_t outer =
        std::size_t(std::ceil(0.1 * double(byFreq.size())));
    double tail = 0.0;
    for (std::size_t k = byFreq.size() - outer; k < byFreq.size(); ++k) {
        const std::size_t i = std::size_t(byFreq[k].second);
        tail += std::norm(ms.omegas[i] * ms.coeffs[i]);
    }
    return tail / total;
}

} // namespace varstring
