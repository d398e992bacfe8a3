#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "varstring/numerics.hpp"
#include "varstring/spectral.hpp"

using namespace varstring;

namespace {

const double kPi = std::acos(-1.0);

std::size_t idx_of(const ModeSet& ms, int n) {
    for (std::size_t i = 0; i < ms.indices.size(); ++i)
        if (ms.indices[i] == n) return i;
    REQUIRE(false);
    return 0;
}

ModeSet standing_wave(int N = 8) {
    const auto map = moore_constant(1.0);
    return compute_coefficients(make_initial_sine(0, 1.0), map, make_damping(0.0), N);
}

} // namespace

TEST_CASE("omega lattice") {
    const auto d0 = make_damping(0.0);
    CHECK(omega(0, d0) == Complex(0.0, kPi / 2.0));
    CHECK(omega(1, d0) == Complex(0.0, 3.0 * kPi / 2.0));

    const auto d3 = make_damping(3.0);
    CHECK(omega(0, d3).real() == doctest::Approx(-0.5 * std::log(2.0)));
    CHECK(omega(0, d3).imag() == 0.0);
    CHECK(omega(2, d3).imag() == doctest::Approx(2.0 * kPi));

    const auto dHalf = make_damping(0.5);
    CHECK(omega(-1, dHalf) == std::conj(omega(0, dHalf)));
    CHECK(omega(0, dHalf).real() == doctest::Approx(-0.5 * std::log(3.0)));

    CHECK_THROWS_AS(omega(0, make_damping(1.0)), TransparentDamping);
    CHECK_THROWS_AS(omega(0, make_damping(1.0 + 1e-9)), TransparentDamping);
}

TEST_CASE("standing wave coefficients are the two classical modes") {
    const auto ms = standing_wave();
    CHECK(ms.indices.size() == 16); // {-8..7}
    const Complex c0 = ms.coeffs[idx_of(ms, 0)];
    const Complex cm1 = ms.coeffs[idx_of(ms, -1)];
    CHECK(std::abs(c0 - Complex(0.0, -0.25)) < 1e-12);
    CHECK(std::abs(cm1 - Complex(0.0, 0.25)) < 1e-12);
    for (int n : ms.indices) {
        if (n == 0 || n == -1) continue;
        CHECK(std::abs(ms.coeffs[idx_of(ms, n)]) < 1e-12);
    }
    CHECK(ms.parsevalSum == doctest::Approx(kPi * kPi / 16.0).epsilon(1e-10));
    CHECK(parseval_lhs(ms) == doctest::Approx(kPi * kPi / 32.0).epsilon(1e-10));
}

TEST_CASE("standing wave series reproduces the d'Alembert solution") {
    const auto ms = standing_wave();
    CHECK(eval_u(ms, 0.5, 0.0) == doctest::Approx(std::sin(kPi / 4.0)).epsilon(1e-8));
    for (double t : {0.0, 0.4, 1.1, 2.7, 6.0}) {
        CHECK(std::abs(eval_u(ms, 0.0, t)) < 1e-12);
        for (double x : {0.1, 0.5, 0.9}) {
            const double exact = std::sin(kPi * x / 2.0) * std::cos(kPi * t / 2.0);
            CHECK(eval_u(ms, x, t) == doctest::Approx(exact).epsilon(1e-8));
            const auto [ut, ux] = eval_ut_ux(ms, x, t);
            CHECK(ut == doctest::Approx(-kPi / 2.0 * std::sin(kPi * x / 2.0) *
                                        std::sin(kPi * t / 2.0))
                            .epsilon(1e-8));
            CHECK(ux == doctest::Approx(kPi / 2.0 * std::cos(kPi * x / 2.0) *
                                        std::cos(kPi * t / 2.0))
                            .epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(eval_u(ms, -0.2, 1.0), OutOfDomain);
}

TEST_CASE("zero data gives the zero mode set") {
    const auto zero = [](double) { return 0.0; };
    const auto init = make_initial_custom(zero, zero, zero);
    const auto ms =
        compute_coefficients(init, moore_constant(1.0), make_damping(0.5), 16);
    for (const Complex& c : ms.coeffs) CHECK(std::abs(c) == 0.0);
    CHECK(ms.parsevalSum == 0.0);
    CHECK(parseval_lhs(ms) == 0.0);
    CHECK(tail_fraction(ms) == 0.0);
}

TEST_CASE("conjugate symmetry for real data") {
    const auto map = moore_linear(1.0, 0.5);
    const auto init = make_initial_gaussian(0.5, 1.0 / 16.0, 1.0);

    const auto sub = compute_coefficients(init, map, make_damping(0.5), 32);
    for (int n = 0; n < 32; ++n) {
        const Complex a = sub.coeffs[idx_of(sub, n)];
        const Complex b = sub.coeffs[idx_of(sub, -n - 1)];
        CHECK(std::abs(b - std::conj(a)) < 1e-12);
        CHECK(sub.omegas[idx_of(sub, n)].real() ==
              doctest::Approx(-0.5 * std::log(3.0)));
    }

    const auto super = compute_coefficients(init, map, make_damping(3.0), 32);
    CHECK(super.indices.size() == 65); // {-32..32}
    for (int n = 1; n <= 32; ++n) {
        const Complex a = super.coeffs[idx_of(super, n)];
        const Complex b = super.coeffs[idx_of(super, -n)];
        CHECK(std::abs(b - std::conj(a)) < 1e-12);
    }
    CHECK(std::abs(super.coeffs[idx_of(super, 0)].imag()) < 1e-12);
}

TEST_CASE("parseval identity against independent quadrature") {
    const auto map = moore_constant(1.0);
    const auto init = make_initial_gaussian(0.5, 1.0 / 16.0, 1.0);
    const auto d = make_damping(0.0);
    const auto ms = compute_coefficients(init, map, d, 256);
    const double lhs = parseval_lhs(ms);
    const double rhs = parseval_rhs(init, map, d);
    CHECK(std::abs(lhs - rhs) / rhs <= 1e-8);
    CHECK(ms.parsevalSum == doctest::Approx(2.0 * lhs));

    // eta = 0 identity between the two written forms of S
    double s0 = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const double odd = 2.0 * ms.indices[i] + 1.0;
        s0 += odd * odd * std::norm(ms.coeffs[i]);
    }
    s0 *= kPi * kPi / 2.0;
    CHECK(s0 == doctest::Approx(2.0 * lhs).epsilon(1e-13));
}

TEST_CASE("coefficient integral is time invariant") {
    const auto map = moore_constant(1.0);
    const auto init = make_initial_gaussian(0.5, 1.0 / 16.0, 1.0);
    const auto d = make_damping(0.5);
    const auto ms = compute_coefficients(init, map, d, 64);

    const double t = 0.7, ell = 1.0;
    QuadratureOptions opt;
    opt.absTol = 5e-12;
    opt.initialPanels = 64;
    for (int n : {0, 1, 5}) {
        const Complex w = ms.omegas[idx_of(ms, n)];
        const auto integrand = [&](double x) {
            const auto [ut, ux] = eval_ut_ux(ms, std::abs(x), t);
            const double g = ux + (x >= 0.0 ? ut : -ut);
            return g * std::exp(-w * Complex(map.phi(t + x)));
        };
        const Complex integral = integrate<Complex>(integrand, -ell, 0.0, opt) +
                                 integrate<Complex>(integrand, 0.0, ell, opt);
        const Complex cT = integral / (4.0 * w);
        const Complex c0 = ms.coeffs[idx_of(ms, n)];
        CHECK(std::abs(cT - c0) <= 1e-8 + 1e-6 * std::abs(c0));
    }
}

TEST_CASE("moving end boundary condition holds for the truncated series") {
    const auto p = make_profile(ProfileKind::Linear, 1.0, 0.5, 3.0);
    const auto map = moore_linear(1.0, 0.5);
    const auto init = make_initial_gaussian(0.5, 1.0 / 16.0, 1.0);
    const double eta = 0.5;
    const auto ms = compute_coefficients(init, map, make_damping(eta), 256);
    for (double t : {0.0, 0.5, 1.0, 1.7, 2.4, 3.0}) {
        const double lp = p.ellPrime(t);
        const auto [ut, ux] = eval_ut_ux(ms, p.ell(t), t);
        CHECK(std::abs((1.0 + eta * lp) * ux + (eta + lp) * ut) <= 1e-4);
    }
}

TEST_CASE("series satisfies the wave equation") {
    const auto ms = standing_wave(16);
    const double h = 1e-3;
    for (double t : {0.5, 1.3}) {
        for (double x : {0.25, 0.5, 0.75}) {
            const double utt = (eval_u(ms, x, t + h) - 2.0 * eval_u(ms, x, t) +
                                eval_u(ms, x, t - h)) /
                               (h * h);
            const double uxx = (eval_u(ms, x + h, t) - 2.0 * eval_u(ms, x, t) +
                                eval_u(ms, x - h, t)) /
                               (h * h);
            CHECK(std::abs(utt - uxx) <= 1e-3);
        }
    }
}

TEST_CASE("initial data reproduction in discrete L2") {
    const auto map = moore_constant(1.0);
    const auto init = make_initial_gaussian(0.5, 1.0 / 16.0, 1.0);
    const auto ms = compute_coefficients(init, map, make_damping(3.0), 256);
    double err2 = 0.0, ref2 = 0.0;
    for (int i = 1; i < 200; ++i) {
        const double x = double(i) / 200.0;
        const double diff = eval_ut(ms, x, 0.0) - init.u1(x);
        err2 += diff * diff;
        ref2 += init.u1(x) * init.u1(x);
        CHECK(std::abs(eval_u(ms, x, 0.0)) <= 1e-8);
    }
    CHECK(std::sqrt(err2 / ref2) <= 1e-6);
}

TEST_CASE("tail fraction diagnostics") {
    CHECK(tail_fraction(standing_wave(64)) < 1e-15);

    const auto map = moore_constant(1.0);
    const auto init = make_initial_triangle(0.37, 1.0);
    const auto d = make_damping(0.0);
    double prev = 1.0;
    for (int N : {64, 128, 256}) {
        const double frac = tail_fraction(compute_coefficients(init, map, d, N));
        CHECK(frac < prev);
        prev = frac;
    }

    const auto tiny = compute_coefficients(make_initial_sine(0, 1.0), map, d, 4);
    CHECK_THROWS_AS(tail_fraction(tiny), Error);
}

TEST_CASE("transparent damping is refused by the series path") {
    const auto map = moore_constant(1.0);
    const auto init = make_initial_sine(0, 1.0);
    CHECK_THROWS_AS(compute_coefficients(init, map, make_damping(1.0), 8),
                    TransparentDamping);
    CHECK_THROWS_AS(parseval_rhs(init, map, make_damping(1.0)), TransparentDamping);
}
