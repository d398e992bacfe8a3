#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "varstring/energy.hpp"

using namespace varstring;

namespace {

const double kPi = std::acos(-1.0);

struct Setup {
    LengthProfile profile;
    MooreMap map;
    DampingConfig damping;
    InitialData init;
    ModeSet modes;
    SpectralEvaluator spectral;
    OracleEvaluator oracle;
};

Setup make_setup(ProfileKind kind, double v, double T, double eta, int N = 256) {
    const auto profile = make_profile(kind, 1.0, v, T);
    auto map = kind == ProfileKind::Constant ? moore_constant(1.0)
                                             : moore_linear(1.0, v);
    const auto damping = make_damping(eta);
    const auto init = make_initial_gaussian(0.5, 1.0 / 16.0, 1.0);
    auto modes = compute_coefficients(init, map, damping, N);
    SpectralEvaluator spectral(modes, profile);
    OracleEvaluator oracle(build_table(init, profile, damping));
    return {profile, std::move(map), damping, init, std::move(modes),
            std::move(spectral), std::move(oracle)};
}

} // namespace

TEST_CASE("standing wave: energy is pi^2/16, constant in time, equal to S0") {
    const auto profile = make_profile(ProfileKind::Constant, 1.0, 0.0, 10.0);
    const auto map = moore_constant(1.0);
    const auto d = make_damping(0.0);
    const auto ms = compute_coefficients(make_initial_sine(0, 1.0), map, d, 8);
    const SpectralEvaluator ev(ms, profile);

    const double E0 = energy_at(ev, 0.0);
    CHECK(E0 == doctest::Approx(kPi * kPi / 16.0).epsilon(1e-8));
    for (int i = 1; i <= 20; ++i) {
        const double t = 10.0 * i / 20.0;
        CHECK(energy_at(ev, t) == doctest::Approx(E0).epsilon(1e-8));
    }
    // degenerate sandwich: m = M = 1, so E = S0
    const auto [m, M] = envelopes(map, profile, 3.0);
    CHECK(m == doctest::Approx(1.0));
    CHECK(M == doctest::Approx(1.0));
    CHECK(E0 == doctest::Approx(ms.parsevalSum).epsilon(1e-8));
    CHECK(std::abs(check_identity_undamped(ev, map, 3.0, ms.parsevalSum)) <= 1e-8);
}

TEST_CASE("envelopes on the linear profile pick the window endpoints") {
    const auto profile = make_profile(ProfileKind::Linear, 1.0, 0.5, 3.0);
    const auto map = moore_linear(1.0, 0.5);
    const double t = 1.0; // window [-0.5, 2.5], phi' decreasing
    const auto [m, M] = envelopes(map, profile, t);
    CHECK(m == doctest::Approx(map.phiPrime(2.5)).epsilon(1e-12));
    CHECK(M == doctest::Approx(map.phiPrime(-0.5)).epsilon(1e-12));

    const auto [mt, Mt] = weighted_envelopes(map, make_damping(0.0), profile, t);
    CHECK(mt == doctest::Approx(m).epsilon(1e-15));
    CHECK(Mt == doctest::Approx(M).epsilon(1e-15));

    CHECK_THROWS_AS(weighted_envelopes(map, make_damping(1.0), profile, t),
                    TransparentDamping);
}

TEST_CASE("spectral and oracle energies agree") {
    for (double eta : {0.0, 0.5, 3.0}) {
        const auto s = make_setup(ProfileKind::Constant, 0.0, 3.0, eta);
        const double E0 = s.spectral.energy(0.0, 1e-10);
        for (int i = 0; i <= 10; ++i) {
            const double t = 3.0 * i / 10.0;
            const double es = s.spectral.energy(t, 1e-10);
            const double eo = s.oracle.energy(t, 0.0);
            CHECK(std::abs(es - eo) <= 1e-4 * E0);
        }
    }
}

TEST_CASE("window identities hold for smooth data") {
    // undamped, expanding profile
    const auto u = make_setup(ProfileKind::Linear, 0.5, 3.0, 0.0);
    for (double t : {0.0, 1.0, 2.9})
        CHECK(std::abs(check_identity_undamped(u.spectral, u.map, t,
                                               u.modes.parsevalSum)) <= 1e-5);

    // damped, fixed length
    const auto d = make_setup(ProfileKind::Constant, 0.0, 3.0, 0.5);
    for (double t : {0.0, 1.3, 2.7})
        CHECK(std::abs(check_identity_damped(d.spectral, d.map, d.damping, t,
                                             d.modes.parsevalSum)) <= 1e-5);

    // eta = 0 passed through the damped path reduces to the undamped one
    const double a = check_identity_undamped(u.spectral, u.map, 1.0,
                                             u.modes.parsevalSum);
    const double b = check_identity_damped(u.spectral, u.map, u.damping, 1.0,
                                           u.modes.parsevalSum);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("undamped sandwich bounds the energy on both sides") {
    const auto s = make_setup(ProfileKind::Linear, 0.5, 3.0, 0.0);
    const double S0 = s.modes.parsevalSum;
    for (int i = 0; i <= 16; ++i) {
        const double t = 3.0 * i / 16.0;
        const auto [m, M] = envelopes(s.map, s.profile, t);
        const auto [lo, hi] = bounds_undamped(S0, m, M);
        const double E = s.spectral.energy(t, 1e-10);
        CHECK(E >= lo * (1.0 - 1e-6));
        CHECK(E <= hi * (1.0 + 1e-6));
        CHECK(lo <= hi);
    }
}

TEST_CASE("damped sandwiches, plain and endpoint-weighted") {
    for (double eta : {0.5, 3.0}) {
        const auto s = make_setup(ProfileKind::Linear, 0.5, 3.0, eta);
        const double S = s.modes.parsevalSum;
        for (int i = 0; i <= 12; ++i) {
            const double t = 3.0 * i / 12.0;
            const double E = s.spectral.energy(t, 1e-10);
            const auto [mt, Mt] = weighted_envelopes(s.map, s.damping, s.profile, t);
            const auto [lo, hi] = bounds_damped(S, mt, Mt);
            CHECK(E >= lo * (1.0 - 1e-6));
            CHECK(E <= hi * (1.0 + 1e-6));
            const auto [lo0, hi0] =
                bounds_endpoint_weighted(s.map, s.damping, s.profile, t, S);
            CHECK(lo0 <= lo * (1.0 + 1e-12));
            CHECK(hi0 >= hi * (1.0 - 1e-12));
            CHECK(E >= lo0 * (1.0 - 1e-6));
            CHECK(E <= hi0 * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("report rows are self-consistent") {
    const auto s = make_setup(ProfileKind::Linear, 0.5, 3.0, 0.5);
    const double S = s.modes.parsevalSum;
    const double E0 = s.spectral.energy(0.0, 1e-10);
    for (double t : {0.0, 1.0, 2.5}) {
        const auto r = energy_report(s.spectral, s.map, s.damping, t, S, E0);
        CHECK(r.t == t);
        CHECK(r.E > 0.0);
        CHECK(r.S == S);
        CHECK(r.m <= r.M);
        CHECK(r.mTilde <= r.MTilde);
        CHECK(r.lower == doctest::Approx(S * r.mTilde).epsilon(1e-15));
        CHECK(r.upper == doctest::Approx(S * r.MTilde).epsilon(1e-15));
        CHECK(r.boundsSatisfied);
        CHECK(std::abs(r.identityResidual) <= 1e-5);
    }

    // undamped rows: weighted envelopes collapse onto the plain ones
    const auto u = make_setup(ProfileKind::Linear, 0.5, 3.0, 0.0);
    const auto r0 = energy_report(u.spectral, u.map, u.damping, 1.0,
                                  u.modes.parsevalSum, E0);
    CHECK(r0.mTilde == doctest::Approx(r0.m).epsilon(1e-15));
    CHECK(r0.MTilde == doctest::Approx(r0.M).epsilon(1e-15));
    CHECK(r0.boundsSatisfied);

    CHECK_THROWS_AS(energy_report(s.spectral, s.map, make_damping(1.0), 1.0, S, E0),
                    TransparentDamping);
}

TEST_CASE("relative sandwich reduces to the fixed-length decay estimate") {
    const auto profile = make_profile(ProfileKind::Constant, 1.0, 0.0, 6.0);
    const auto map = moore_constant(1.0);

    // undamped: lower = upper = E(t0)
    const auto [l0, u0] = bounds_relative(map, make_damping(0.0), profile, 0.0,
                                          4.0, 2.5);
    CHECK(l0 == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(u0 == doctest::Approx(2.5).epsilon(1e-12));

    // damped: gamma^{-2} E0 e^{-t ln gamma} <= E <= gamma^2 E0 e^{-t ln gamma}
    const auto d = make_damping(0.5);
    const double g = std::log(3.0), E0 = 1.7, t = 2.0;
    const auto [lo, hi] = bounds_relative(map, d, profile, 0.0, t, E0);
    CHECK(lo == doctest::Approx(E0 * std::exp(-g * t) / 9.0).epsilon(1e-12));
    CHECK(hi == doctest::Approx(E0 * std::exp(-g * t) * 9.0).epsilon(1e-12));
}

TEST_CASE("relative sandwich contains the measured energy") {
    const auto s = make_setup(ProfileKind::Linear, 0.5, 3.0, 0.5);
    const double Et0 = s.spectral.energy(0.5, 1e-10);
    for (double t : {1.0, 2.0, 3.0}) {
        const auto [lo, hi] =
            bounds_relative(s.map, s.damping, s.profile, 0.5, t, Et0);
        const double E = s.spectral.energy(t, 1e-10);
        CHECK(E >= lo * (1.0 - 1e-6));
        CHECK(E <= hi * (1.0 + 1e-6));
    }
}

TEST_CASE("energy derivative forms agree with each other and with differences") {
    const auto s = make_setup(ProfileKind::Linear, 0.5, 3.0, 0.5);
    for (double t : {0.5, 1.5, 2.5}) {
        const auto forms = energy_derivative_forms(s.spectral, s.damping, t);
        REQUIRE(forms.damped.has_value());
        CHECK(forms.general ==
              doctest::Approx(*forms.damped).epsilon(1e-7).scale(1.0));

        const double h = 1e-4;
        const double fd = (s.spectral.energy(t + h, 1e-12) -
                           s.spectral.energy(t - h, 1e-12)) /
                          (2.0 * h);
        CHECK(fd == doctest::Approx(forms.general).epsilon(1e-3));
        CHECK(energy_derivative(s.spectral, s.damping, t) == forms.general);
    }

    const auto u = make_setup(ProfileKind::Linear, 0.5, 3.0, 0.0);
    for (double t : {0.5, 2.0}) {
        const auto forms = energy_derivative_forms(u.spectral, u.damping, t);
        REQUIRE(forms.undamped.has_value());
        CHECK(forms.general ==
              doctest::Approx(*forms.undamped).epsilon(1e-7).scale(1.0));
        CHECK(forms.general <= 1e-12); // expanding, undamped: nonincreasing
    }
}

TEST_CASE("special boundary speeds") {
    // l' = -1/eta: quotient form blows up, the u_x form takes over
    CHECK_THROWS_AS(dissipation_quotient(2.0, -0.5, 1.0), SingularBoundary);
    const auto s = make_setup(ProfileKind::Linear, -0.5, 1.8, 2.0);
    for (double t : {0.3, 0.9}) {
        const auto forms = energy_derivative_forms(s.spectral, s.damping, t);
        REQUIRE(forms.damped.has_value());
        const auto [ut, ux] = s.spectral.ut_ux(s.profile.ell(t), t);
        CHECK(*forms.damped == doctest::Approx(-ux * ux / 4.0));
        CHECK(forms.general ==
              doctest::Approx(*forms.damped).epsilon(1e-7).scale(1.0));
    }

    // l' = -eta: E' = -eta u_t^2 / 2
    {
        const double ut = 0.83;
        CHECK(dissipation_quotient(0.5, -0.5, ut) ==
              doctest::Approx(-0.5 * 0.5 * ut * ut).epsilon(1e-14));
    }
    // static end: E' = -eta u_t^2
    {
        const double ut = 1.21;
        CHECK(dissipation_quotient(0.7, 0.0, ut) ==
              doctest::Approx(-0.7 * ut * ut).epsilon(1e-14));
    }
}

TEST_CASE("critical damping window") {
    const auto w = critical_damping(-0.6);
    CHECK(w.regime == WindowRegime::ShrinkingWindow);
    CHECK(std::abs(w.eta1 - 1.0 / 3.0) <= 1e-12);
    CHECK(std::abs(w.eta2 - 3.0) <= 1e-12);

    for (double lp : {-0.9, -0.6, -0.3, -0.05}) {
        const auto win = critical_damping(lp);
        CHECK(win.eta1 * win.eta2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(win.eta1 > 0.0);
        CHECK(win.eta1 < 1.0);
        CHECK(win.eta2 > 1.0);
    }

    CHECK(critical_damping(0.5).regime == WindowRegime::ExpandingAlwaysDecay);
    CHECK(std::isnan(critical_damping(0.5).eta1));
    CHECK(critical_damping(0.0).regime == WindowRegime::Static);
    CHECK_THROWS_AS(critical_damping(1.0), SpeedLimit);
    CHECK_THROWS_AS(critical_damping(-1.3), SpeedLimit);
}

TEST_CASE("trend classification across the window") {
    const auto w = critical_damping(-0.6);
    CHECK(classify_damping(w, 0.5) == EnergyTrend::Decay);
    CHECK(classify_damping(w, 2.0) == EnergyTrend::Decay);
    CHECK(classify_damping(w, 0.1) == EnergyTrend::Growth);
    CHECK(classify_damping(w, 10.0) == EnergyTrend::Growth);
    CHECK(classify_damping(w, 1.0 / 3.0) == EnergyTrend::Constant);
    CHECK(classify_damping(w, 3.0) == EnergyTrend::Constant);
    CHECK(classify_damping(w, 0.0) == EnergyTrend::Growth);

    const auto e = critical_damping(0.4);
    CHECK(classify_damping(e, 0.0) == EnergyTrend::Decay);
    CHECK(classify_damping(e, 2.0) == EnergyTrend::Decay);

    const auto st = critical_damping(0.0);
    CHECK(classify_damping(st, 0.0) == EnergyTrend::Constant);
    CHECK(classify_damping(st, 2.0) == EnergyTrend::Decay);

    CHECK_THROWS_AS(classify_damping(w, -0.2), NegativeDamping);
}

TEST_CASE("oracle energy trend matches the classification") {
    const auto profile = make_profile(ProfileKind::Linear, 1.0, -0.6, 1.5);
    const auto init = make_initial_gaussian(0.5, 1.0 / 16.0, 1.0);

    const auto trend = [&](double eta) {
        const OracleEvaluator ev(build_table(init, profile, make_damping(eta)));
        const double slack = 1e-5 * ev.energy(0.0, 0.0); // above trapezoid noise
        double prev = ev.energy(0.0, 0.0);
        int sign = 0;
        for (int i = 1; i <= 24; ++i) {
            const double E = ev.energy(1.5 * i / 24.0, 0.0);
            if (E > prev + slack) sign |= 1; // grew
            if (E < prev - slack) sign |= 2; // shrank
            prev = E;
        }
        return sign;
    };
    CHECK(trend(0.5) == 2);
    CHECK(trend(0.1) == 1);
}

TEST_CASE("evaluator domain checks") {
    const auto s = make_setup(ProfileKind::Constant, 0.0, 2.0, 0.0, 16);
    CHECK_THROWS_AS(s.spectral.ut_ux(1.5, 1.0), OutOfDomain);
    CHECK_THROWS_AS(s.spectral.ut_ux(-0.5, 1.0), OutOfDomain);
    // the moving endpoint itself is fine
    const auto [ut, ux] = s.spectral.ut_ux(1.0, 1.0);
    CHECK(std::isfinite(ut));
    CHECK(std::isfinite(ux));

    // mode set and profile must agree on the initial length
    const auto other = make_profile(ProfileKind::Constant, 2.0, 0.0, 1.0);
    CHECK_THROWS_AS(SpectralEvaluator(s.modes, other), Error);
}
