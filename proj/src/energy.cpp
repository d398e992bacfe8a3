#include "varstring/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "varstring/errors.hpp"
#include "varstring/numerics.hpp"

namespace varstring {

namespace {

double sq(double v) { return v * v; }

// Window sample count: fixed for closed-form maps, resolution-matched for
// tabulated ones so no table cell is skipped.
int window_samples(const MooreMap& map, double len) {
    if (map.source != MooreSource::NumericRecursion) return 4096;
    const auto& xs = map.table.x;
    const double hGrid = (xs.back() - xs.front()) / double(xs.size() - 1);
    const double wanted = 64.0 * len / hGrid;
    return int(std::min(1e7, std::max(1024.0, std::ceil(wanted))));
}

template <class F>
std::pair<double, double> window_min_max(F&& f, double a, double b, int n) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i <= n; ++i) {
        const double v = f(a + (b - a) * double(i) / double(n));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

void require_weightable(const DampingConfig& damping) {
    if (damping.regime == Regime::Transparent)
        throw TransparentDamping("gamma is undefined at eta = 1");
}

double identity_quad(const SolutionEvaluator& ev, const MooreMap& map,
                     double logAbsGamma, double t, double S, double quadTol) {
    const LengthProfile& p = ev.profile();
    const double ell = p.ell(t);
    const auto weight = [&](double xi) {
        return std::exp(logAbsGamma * map.phi(xi)) / map.phiPrime(xi);
    };
    QuadratureOptions opt;
    opt.absTol = quadTol * std::max(1.0, std::abs(4.0 * S));
    opt.initialPanels = 64;
    const double quad = integrate<double>(
        [&](double x) {
            const auto [ut, ux] = ev.ut_ux(x, t);
            const double B = weight(t + x);
            const double A = weight(t - x);
            return (B + A) * (ux * ux + ut * ut) + 2.0 * (B - A) * ux * ut;
        },
        0.0, ell, opt);
    return (quad - 4.0 * S) / std::max(std::abs(4.0 * S), 1e-12);
}

} // namespace

SpectralEvaluator::SpectralEvaluator(ModeSet modes, LengthProfile profile)
    : modes_(std::move(modes)), profile_(std::move(profile)) {
    if (std::abs(modes_.L - profile_.L) > 1e-12 * (1.0 + profile_.L))
        throw Error("mode set and profile disagree on the initial length");
}

std::pair<double, double> SpectralEvaluator::ut_ux(double x, double t) const {
    const double slack = 1e-9 * (1.0 + profile_.L);
    if (x > profile_.ell(t) + slack)
        throw OutOfDomain("x beyond the moving end");
    return eval_ut_ux(modes_, x, t);
}

double SpectralEvaluator::energy(double t, double quadTol) const {
    const double ell = profile_.ell(t);
    QuadratureOptions opt;
    opt.absTol = quadTol;
    opt.initialPanels = 64;
    return 0.5 * integrate<double>(
                     [&](double x) {
                         const auto [ut, ux] = eval_ut_ux(modes_, x, t);
                         return ux * ux + ut * ut;
                     },
                     0.0, ell, opt);
}

OracleEvaluator::OracleEvaluator(CharacteristicTable table)
    : table_(std::move(table)) {}

std::pair<double, double> OracleEvaluator::ut_ux(double x, double t) const {
    return oracle_ut_ux(table_, x, t);
}

double OracleEvaluator::energy(double t, double /*quadTol*/) const {
    return oracle_energy(table_, t);
}

double energy_at(const SolutionEvaluator& ev, double t, double quadTol) {
    return ev.energy(t, quadTol);
}

EnergyReport energy_report(const SolutionEvaluator& ev, const MooreMap& map,
                           const DampingConfig& damping, double t, double S,
                           double E0, double quadTol) {
    require_weightable(damping);
    const LengthProfile& p = ev.profile();
    EnergyReport r;
    r.t = t;
    r.S = S;
    r.E = ev.energy(t, quadTol);
    std::tie(r.m, r.M) = envelopes(map, p, t);
    std::tie(r.mTilde, r.MTilde) = weighted_envelopes(map, damping, p, t);
    std::tie(r.lower, r.upper) = bounds_damped(S, r.mTilde, r.MTilde);
    r.identityResidual = check_identity_damped(ev, map, damping, t, S, quadTol);
    const double floor = 1e-12 * E0;
    r.boundsSatisfied = r.lower <= r.E * (1.0 + 1e-6) + floor &&
                        r.E <= r.upper * (1.0 + 1e-6) + floor;
    return r;
}

std::pair<double, double> envelopes(const MooreMap& map,
                                    const LengthProfile& profile, double t) {
    const double a = beta(profile, t);
    const double b = alpha(profile, t);
    return window_min_max([&](double xi) { return map.phiPrime(xi); }, a, b,
                          window_samples(map, b - a));
}

std::pair<double, double> weighted_envelopes(const MooreMap& map,
                                             const DampingConfig& damping,
                                             const LengthProfile& profile,
                                             double t) {
    require_weightable(damping);
    const double g = damping.logAbsGamma;
    const double a = beta(profile, t);
    const double b = alpha(profile, t);
    return window_min_max(
        [&](double xi) { return map.phiPrime(xi) * std::exp(-g * map.phi(xi)); },
        a, b, window_samples(map, b - a));
}

double check_identity_undamped(const SolutionEvaluator& ev, const MooreMap& map,
                               double t, double S0, double quadTol) {
    return identity_quad(ev, map, 0.0, t, S0, quadTol);
}

double check_identity_damped(const SolutionEvaluator& ev, const MooreMap& map,
                             const DampingConfig& damping, double t,
                             double Seta, double quadTol) {
    require_weightable(damping);
    return identity_quad(ev, map, damping.logAbsGamma, t, Seta, quadTol);
}

std::pair<double, double> bounds_undamped(double S0, double m, double M) {
    return {S0 * m, S0 * M};
}

std::pair<double, double> bounds_damped(double Seta, double mTilde, double MTilde) {
    return {Seta * mTilde, Seta * MTilde};
}

std::pair<double, double> bounds_endpoint_weighted(const MooreMap& map,
                                                   const DampingConfig& damping,
                                                   const LengthProfile& profile,
                                                   double t, double Seta) {
    require_weightable(damping);
    const double g = damping.logAbsGamma;
    const auto [m, M] = envelopes(map, profile, t);
    const double lower = Seta * m * std::exp(-g * map.phi(alpha(profile, t)));
    const double upper = Seta * M * std::exp(-g * map.phi(beta(profile, t)));
    return {lower, upper};
}

std::pair<double, double> bounds_relative(const MooreMap& map,
                                          const DampingConfig& damping,
                                          const LengthProfile& profile,
                                          double t0, double t, double Et0) {
    require_weightable(damping);
    const double g = damping.logAbsGamma;
    const auto [m1, M1] = envelopes(map, profile, t);
    const auto [m0, M0] = envelopes(map, profile, t0);
    const double lower = Et0 * (m1 * std::exp(-g * map.phi(alpha(profile, t)))) /
                         (M0 * std::exp(-g * map.phi(beta(profile, t0))));
    const double upper = Et0 * (M1 * std::exp(-g * map.phi(beta(profile, t)))) /
                         (m0 * std::exp(-g * map.phi(alpha(profile, t0))));
    return {lower, upper};
}

double dissipation_quotient(double eta, double lprime, double ut) {
    const double denom = 1.0 + eta * lprime;
    if (std::abs(denom) < 1e-9)
        throw SingularBoundary("1 + eta l' vanishes; use the u_x form");
    const double P = lprime * eta * eta + 2.0 * eta + lprime;
    return -0.5 * P * (1.0 - lprime * lprime) / (denom * denom) * ut * ut;
}

DerivativeForms energy_derivative_forms(const SolutionEvaluator& ev,
                                        const DampingConfig& damping, double t) {
    const LengthProfile& p = ev.profile();
    const double lp = p.ellPrime(t);
    const auto [ut, ux] = ev.ut_ux(p.ell(t), t);

    DerivativeForms out;
    out.general = 0.5 * lp * (ux * ux + ut * ut) + ut * ux;
    if (damping.eta == 0.0)
        out.undamped = -0.5 * lp * (1.0 - lp * lp) * ut * ut;
    if (damping.eta > 0.0) {
        if (std::abs(1.0 + damping.eta * lp) < 1e-9)
            out.damped = -ux * ux / (2.0 * damping.eta);
        else
            out.damped = dissipation_quotient(damping.eta, lp, ut);
    }
    return out;
}

double energy_derivative(const SolutionEvaluator& ev, const DampingConfig& damping,
                         double t) {
    return energy_derivative_forms(ev, damping, t).general;
}

DampingWindow critical_damping(double lprime) {
    if (std::abs(lprime) >= 1.0)
        throw SpeedLimit("|l'| >= 1 has no admissible motion");
    DampingWindow w;
    w.lprime = lprime;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (lprime > 0.0) {
        w.regime = WindowRegime::ExpandingAlwaysDecay;
        w.eta1 = w.eta2 = nan;
    } else if (lprime == 0.0) {
        w.regime = WindowRegime::Static;
        w.eta1 = w.eta2 = nan;
    } else {
        w.regime = WindowRegime::ShrinkingWindow;
        const double root = std::sqrt(1.0 - lprime * lprime);
        // algebraically (-1 + root)/l', written to avoid cancellation
        w.eta1 = -lprime / (1.0 + root);
        w.eta2 = -(1.0 + root) / lprime;
    }
    return w;
}

EnergyTrend classify_damping(const DampingWindow& window, double eta) {
    if (eta < 0.0) throw NegativeDamping("eta must be nonnegative");
    const double P = window.lprime * eta * eta + 2.0 * eta + window.lprime;
    const double tol = 1e-12 * sq(1.0 + eta);
    if (std::abs(P) <= tol) return EnergyTrend::Constant;
    return P > 0.0 ? EnergyTrend::Decay : EnergyTrend::Growth;
}

const char* trend_name(EnergyTrend trend) {
    switch (trend) {
    case EnergyTrend::Decay: return "decay";
    case EnergyTrend::Constant: return "constant";
    case EnergyTrend::Growth: return "growth";
    }
    return "unknown";
}

const char* window_regime_name(WindowRegime regime) {
    switch (regime) {
    case WindowRegime::ExpandingAlwaysDecay: return "ExpandingAlwaysDecay";
    case WindowRegime::ShrinkingWindow: return "ShrinkingWindow";
    case WindowRegime::Static: return "Static";
    }
    return "unknown";
}

} // namespace varstring
