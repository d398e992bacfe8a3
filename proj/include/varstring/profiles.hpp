#pragma once

#include <functional>
#include <string>
#include <vector>

#include "varstring/errors.hpp"

namespace varstring {

enum class ProfileKind { Constant, Linear, Custom };

// Interval length l(t) on the validated horizon [0, T], with l(0) = L,
// l(t) > 0 and |l'(t)| < 1 throughout. Evaluation tolerates a small
// overhang past T so characteristic endpoints can land on the closure.
struct LengthProfile {
    ProfileKind kind = ProfileKind::Constant;
    double L = 1.0; // l(0)
    double v = 0.0; // slope, Linear only
    double T = 1.0; // validated horizon
    std::function<double(double)> ell;
    std::function<double(double)> ellPrime;

    double length(double t) const { return ell(t); }
    double speed(double t) const { return ellPrime(t); }
};

// Analytic profiles; validity is checked by dense sampling on [0, T]
// (SpeedLimit / Collapse on violation). v is ignored for Constant.
LengthProfile make_profile(ProfileKind kind, double L, double v, double T);

// Custom profile from callables; l(0) is taken as L. samples controls the
// density of the validity sweep over [0, T].
LengthProfile make_profile(std::function<double(double)> ell,
                           std::function<double(double)> ellPrime, double T,
                           int samples = 10000);

double alpha(const LengthProfile& p, double t);       // t + l(t)
double beta(const LengthProfile& p, double t);        // t - l(t)
double alpha_prime(const LengthProfile& p, double t); // 1 + l'(t)
double beta_prime(const LengthProfile& p, double t);  // 1 - l'(t)

// Smallest t with beta(t) = L, by bisection on the increasing beta
// (argument tolerance 1e-10). NotReached if beta(T) < L.
double extinction_time(const LengthProfile& p);

enum class Regime { Undamped, Sub, Transparent, Super };

struct DampingConfig {
    double eta = 0.0;
    double gamma = 1.0;       // (1+eta)/(1-eta); NaN when Transparent
    double logAbsGamma = 0.0; // ln|gamma|; NaN when Transparent
    Regime regime = Regime::Undamped;

    // Series machinery refuses a guard band around eta = 1, where the
    // reflection quotient loses all significance.
    bool spectral_allowed() const;
};

DampingConfig make_damping(double eta);

const char* regime_name(Regime r);

enum class Preset { SineMode, Triangle, GaussianVelocityBump, Custom };

// Initial shape u0 (with derivative u0x) and velocity u1 on [0, L].
// kinks lists interior derivative-jump positions, used downstream to
// split quadrature panels and snap characteristic grids.
struct InitialData {
    Preset preset = Preset::Custom;
    std::function<double(double)> u0, u0x, u1;
    std::vector<double> kinks;
};

// u0 = sin((2k+1) pi x / (2L)), u1 = 0.
InitialData make_initial_sine(int k, double L);

// Unit-height pluck with the peak at x = peak, u1 = 0.
InitialData make_initial_triangle(double peak, double L);

// u0 = 0, u1 = exp(-(x-center)^2 / (2 width^2)); defaults center = L/2,
// width = L/16 keep the endpoint values below 1e-12.
InitialData make_initial_gaussian(double center, double width, double L);

InitialData make_initial_custom(std::function<double(double)> u0,
                                std::function<double(double)> u0x,
                                std::function<double(double)> u1,
                                std::vector<double> kinks = {});

// Even extension of u0x plus odd extension of u1, evaluated on [-L, L].
double data_extension(const InitialData& init, double x);

} // namespace varstring
