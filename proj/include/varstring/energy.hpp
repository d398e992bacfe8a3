#pragma once

#include <optional>
#include <utility>

#include "varstring/characteristics.hpp"
#include "varstring/moore.hpp"
#include "varstring/profiles.hpp"
#include "varstring/spectral.hpp"

namespace varstring {

// Uniform access to a solution: pointwise (u_t, u_x) and the instantaneous
// energy E(t) = 1/2 int_0^{l(t)} (u_x^2 + u_t^2) dx.
class SolutionEvaluator {
public:
    virtual ~SolutionEvaluator() = default;
    virtual std::pair<double, double> ut_ux(double x, double t) const = 0;
    virtual double energy(double t, double quadTol) const = 0;
    virtual const LengthProfile& profile() const = 0;
};

class SpectralEvaluator : public SolutionEvaluator {
public:
    SpectralEvaluator(ModeSet modes, LengthProfile profile);
    const ModeSet& modes() const { return modes_; }
    std::pair<double, double> ut_ux(double x, double t) const override;
    double energy(double t, double quadTol) const override;
    const LengthProfile& profile() const override { return profile_; }

private:
    ModeSet modes_;
    LengthProfile profile_;
};

class OracleEvaluator : public SolutionEvaluator {
public:
    explicit OracleEvaluator(CharacteristicTable table);
    const CharacteristicTable& table() const { return table_; }
    std::pair<double, double> ut_ux(double x, double t) const override;
    double energy(double t, double quadTol) const override;
    const LengthProfile& profile() const override { return table_.profile; }

private:
    CharacteristicTable table_;
};

double energy_at(const SolutionEvaluator& ev, double t, double quadTol = 1e-10);

// One sampled time: measured energy beside the active sandwich, the envelopes
// behind it, and the identity residual. Rows feed the CSV writer.
struct EnergyReport {
    double t = 0.0;
    double E = 0.0;
    double S = 0.0;     // series sum; plain for eta = 0, weighted otherwise
    double lower = 0.0; // active bound pair at t
    double upper = 0.0;
    double m = 0.0, M = 0.0;
    double mTilde = 0.0, MTilde = 0.0; // coincide with m, M when eta = 0
    double identityResidual = 0.0;
    bool boundsSatisfied = false;
};

// Assembles the report row. E0 sets the absolute floor 1e-12 E(0) under the
// relative slack of the bound check, so zero-energy data cannot fail on
// roundoff. Throws TransparentDamping at eta = 1 like the pieces it wraps.
EnergyReport energy_report(const SolutionEvaluator& ev, const MooreMap& map,
                           const DampingConfig& damping, double t, double S,
                           double E0, double quadTol = 1e-10);

// min/max of phi' over the characteristic window [beta(t), alpha(t)].
std::pair<double, double> envelopes(const MooreMap& map,
                                    const LengthProfile& profile, double t);

// min/max of phi' e^{-ln|gamma| phi} over the same window.
std::pair<double, double> weighted_envelopes(const MooreMap& map,
                                             const DampingConfig& damping,
                                             const LengthProfile& profile,
                                             double t);

// Relative residual of the window identity
//   int_0^{l} [(B+A)(u_x^2+u_t^2) + 2(B-A) u_x u_t] dx = 4 S,
// where B and A weight the forward/backward characteristics. Undamped:
// B = 1/phi'(t+x), A = 1/phi'(t-x), S = S_0. Damped: the weights carry the
// extra factor e^{ln|gamma| phi}.
double check_identity_undamped(const SolutionEvaluator& ev, const MooreMap& map,
                               double t, double S0, double quadTol = 1e-10);
double check_identity_damped(const SolutionEvaluator& ev, const MooreMap& map,
                             const DampingConfig& damping, double t,
                             double Seta, double quadTol = 1e-10);

// Two-sided sandwiches for E(t).
std::pair<double, double> bounds_undamped(double S0, double m, double M);
std::pair<double, double> bounds_damped(double Seta, double mTilde, double MTilde);

// Endpoint-weighted damped sandwich:
//   S m e^{-ln|gamma| phi(alpha(t))} <= E <= S M e^{-ln|gamma| phi(beta(t))}.
std::pair<double, double> bounds_endpoint_weighted(const MooreMap& map,
                                                   const DampingConfig& damping,
                                                   const LengthProfile& profile,
                                                   double t, double Seta);

// Relative sandwich tying E(t) to a measured E(t0) without the series sum.
// Undamped it reduces to m(t)/M(t0) <= E(t)/E(t0) <= M(t)/m(t0).
std::pair<double, double> bounds_relative(const MooreMap& map,
                                          const DampingConfig& damping,
                                          const LengthProfile& profile,
                                          double t0, double t, double Et0);

// d/dt E along the solution, all algebraic in boundary data.
struct DerivativeForms {
    double general = 0.0;                 // l'/2 (u_x^2+u_t^2) + u_t u_x at x=l
    std::optional<double> undamped;       // -(l'/2)(1-l'^2) u_t^2
    std::optional<double> damped;         // dissipation quotient, or the
                                          // u_x-based form when 1+eta l' ~ 0
};

DerivativeForms energy_derivative_forms(const SolutionEvaluator& ev,
                                        const DampingConfig& damping, double t);

// E'(t) via the boundary-data form that holds in every regime.
double energy_derivative(const SolutionEvaluator& ev, const DampingConfig& damping,
                         double t);

// Quotient form of the damped dissipation rate. Throws SingularBoundary when
// |1 + eta l'| < 1e-9; callers switch to -u_x^2/(2 eta) there.
double dissipation_quotient(double eta, double lprime, double ut);

// Sign window of P(eta) = l' eta^2 + 2 eta + l' at fixed l'.
enum class WindowRegime { ExpandingAlwaysDecay, ShrinkingWindow, Static };

struct DampingWindow {
    double t = 0.0; // set by callers that evaluate l' along a trajectory
    double lprime = 0.0;
    double eta1 = 0.0; // NaN unless shrinking
    double eta2 = 0.0;
    WindowRegime regime = WindowRegime::Static;
};

DampingWindow critical_damping(double lprime);

enum class EnergyTrend { Decay, Constant, Growth };
EnergyTrend classify_damping(const DampingWindow& window, double eta);
const char* trend_name(EnergyTrend trend);
const char* window_regime_name(WindowRegime regime);

} // namespace varstring
