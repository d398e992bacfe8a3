#include "varstring/profiles.hpp"

#include <cmath>
#include <limits>

#include "varstring/numerics.hpp"

namespace varstring {

namespace {

constexpr double kGuardBand = 1e-6; // rejected |eta - 1| band for series use

double overhang(const LengthProfile& p) {
    return 1e-3 * (1.0 + p.T);
}

// Dense sweep of the admissibility conditions l > 0 and |l'| < 1 on [0, T],
// plus a centered-difference consistency check of the supplied derivative.
void validate_profile(const LengthProfile& p, int samples) {
    if (p.L <= 0.0) throw Collapse("initial length must be positive");
    if (p.T <= 0.0) throw Error("horizon T must be positive");
    const int n = std::max(2, samples);
    const double h = 1e-6 * std::max(1.0, p.T);
    for (int i = 0; i <= n; ++i) {
        const double t = p.T * double(i) / double(n);
        if (std::abs(p.ellPrime(t)) >= 1.0)
            throw SpeedLimit("|l'(t)| >= 1 at t = " + std::to_string(t));
        if (p.ell(t) <= 0.0)
            throw Collapse("l(t) <= 0 at t = " + std::to_string(t));
        if (i > 0 && i < n) {
            const double fd = (p.ell(t + h) - p.ell(t - h)) / (2.0 * h);
            if (std::abs(fd - p.ellPrime(t)) > 1e-6)
                throw Error("l' inconsistent with l at t = " + std::to_string(t));
        }
    }
}

void check_time(const LengthProfile& p, double t) {
    const double slack = overhang(p);
    if (t < -slack || t > p.T + slack)
        throw OutOfDomain("time outside validated horizon [0, T]");
}

} // namespace

LengthProfile make_profile(ProfileKind kind, double L, double v, double T) {
    LengthProfile p;
    p.kind = kind;
    p.L = L;
    p.T = T;
    switch (kind) {
    case ProfileKind::Constant:
        p.v = 0.0;
        p.ell = [L](double) { return L; };
        p.ellPrime = [](double) { return 0.0; };
        break;
    case ProfileKind::Linear:
        p.v = v;
        p.ell = [L, v](double t) { return L + v * t; };
        p.ellPrime = [v](double) { return v; };
        break;
    case ProfileKind::Custom:
        throw Error("custom profiles take callables; use the other overload");
    }
    validate_profile(p, 10000);
    return p;
}

LengthProfile make_profile(std::function<double(double)> ell,
                           std::function<double(double)> ellPrime, double T,
                           int samples) {
    LengthProfile p;
    p.kind = ProfileKind::Custom;
    p.T = T;
    p.ell = std::move(ell);
    p.ellPrime = std::move(ellPrime);
    p.L = p.ell(0.0);
    p.v = 0.0;
    validate_profile(p, samples);
    return p;
}

double alpha(const LengthProfile& p, double t) {
    check_time(p, t);
    return t + p.ell(t);
}

double beta(const LengthProfile& p, double t) {
    check_time(p, t);
    return t - p.ell(t);
}

double alpha_prime(const LengthProfile& p, double t) {
    check_time(p, t);
    return 1.0 + p.ellPrime(t);
}

double beta_prime(const LengthProfile& p, double t) {
    check_time(p, t);
    return 1.0 - p.ellPrime(t);
}

double extinction_time(const LengthProfile& p) {
    const double L = p.L;
    if (beta(p, p.T) < L)
        throw NotReached("beta(T) < L: extinction beyond the horizon");
    return invert_increasing([&](double t) { return beta(p, t); }, 0.0, p.T, L,
                             1e-10);
}

bool DampingConfig::spectral_allowed() const {
    return std::abs(eta - 1.0) >= kGuardBand;
}

DampingConfig make_damping(double eta) {
    if (eta < 0.0) throw NegativeDamping("damping factor must be nonnegative");
    DampingConfig d;
    d.eta = eta;
    if (eta == 1.0) {
        d.regime = Regime::Transparent;
        d.gamma = std::numeric_limits<double>::quiet_NaN();
        d.logAbsGamma = std::numeric_limits<double>::quiet_NaN();
        return d;
    }
    d.gamma = (1.0 + eta) / (1.0 - eta);
    d.logAbsGamma = std::log(std::abs(d.gamma));
    d.regime = eta == 0.0 ? Regime::Undamped
                          : (eta < 1.0 ? Regime::Sub : Regime::Super);
    return d;
}

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::Undamped:    return "Undamped";
    case Regime::Sub:         return "Sub";
    case Regime::Transparent: return "Transparent";
    case Regime::Super:       return "Super";
    }
    return "?";
}

InitialData make_initial_sine(int k, double L) {
    if (k < 0) throw Error("sine mode index must be nonnegative");
    const double w = (2 * k + 1) * std::acos(-1.0) / (2.0 * L);
    InitialData d;
    d.preset = Preset::SineMode;
    d.u0 = [w](double x) { return std::sin(w * x); };
    d.u0x = [w](double x) { return w * std::cos(w * x); };
    d.u1 = [](double) { return 0.0; };
    return d;
}

InitialData make_initial_triangle(double peak, double L) {
    if (!(peak > 0.0 && peak < L))
        throw Error("triangle peak must lie strictly inside (0, L)");
    InitialData d;
    d.preset = Preset::Triangle;
    d.u0 = [peak, L](double x) {
        return x <= peak ? x / peak : (L - x) / (L - peak);
    };
    d.u0x = [peak, L](double x) {
        return x <= peak ? 1.0 / peak : -1.0 / (L - peak);
    };
    d.u1 = [](double) { return 0.0; };
    d.kinks = {peak};
    return d;
}

InitialData make_initial_gaussian(double center, double width, double L) {
    if (!(center > 0.0 && center < L) || width <= 0.0)
        throw Error("gaussian bump must be centered inside (0, L)");
    InitialData d;
    d.preset = Preset::GaussianVelocityBump;
    d.u0 = [](double) { return 0.0; };
    d.u0x = [](double) { return 0.0; };
    d.u1 = [center, width](double x) {
        const double s = (x - center) / width;
        return std::exp(-0.5 * s * s);
    };
    return d;
}

InitialData make_initial_custom(std::function<double(double)> u0,
                                std::function<double(double)> u0x,
                                std::function<double(double)> u1,
                                std::vector<double> kinks) {
    InitialData d;
    d.preset = Preset::Custom;
    d.u0 = std::move(u0);
    d.u0x = std::move(u0x);
    d.u1 = std::move(u1);
    d.kinks = std::move(kinks);
    if (std::abs(d.u0(0.0)) > 1e-12)
        throw Error("initial shape must vanish at the fixed end");
    return d;
}

double data_extension(const InitialData& init, double x) {
    if (x >= 0.0) return init.u0x(x) + init.u1(x);
    return init.u0x(-x) - init.u1(-x);
}

} // namespace varstring
