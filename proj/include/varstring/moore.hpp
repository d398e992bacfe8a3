#pragma once

#include <functional>
#include <limits>

#include "varstring/numerics.hpp"
#include "varstring/profiles.hpp"

namespace varstring {

enum class MooreSource { ClosedFormConstant, ClosedFormLinear, NumericRecursion };

// Seed used on [-L, L] by the numeric recursion. Hermite is a 3-knot
// monotone cubic through (-L,-1), (0,0), (L,1) whose endpoint derivatives
// satisfy the differentiated identity at t = 0. TangentClosedForm takes the
// closed form of the profile tangent to l at t = 0 (exact for constant and
// linear profiles, so the recursion reproduces the closed forms).
enum class SeedKind { Hermite, TangentClosedForm };

// Strictly increasing C^1 solution of phi(t + l(t)) - phi(t - l(t)) = 2,
// normalized so phi(0) = 0, defined on [-L, xiMax].
struct MooreMap {
    MooreSource source = MooreSource::ClosedFormConstant;
    double L = 1.0;
    double xiMin = -1.0;
    double xiMax = std::numeric_limits<double>::infinity();
    std::function<double(double)> phiFn, phiPrimeFn; // closed forms
    HermiteTable table;                              // numeric recursion

    double phi(double xi) const;
    double phiPrime(double xi) const;
};

// phi(xi) = xi / L.
MooreMap moore_constant(double L);

// phi(xi) = (2 / ln((1+v)/(1-v))) ln((L + v xi)/L) for l(t) = L + v t,
// 0 < |v| < 1. For v < 0 the domain ends where L + v xi reaches 0.
MooreMap moore_linear(double L, double v);

// Tabulated solution for an arbitrary admissible profile: seed on [-L, L],
// then phi(xi) = phi(beta(alpha^-1(xi))) + 2 node by node up to xiMax
// (default alpha(T) plus one grid cell). gridPerUnit sets the table density;
// maxBounces caps the characteristic bounce count implied by xiMax.
MooreMap moore_numeric(const LengthProfile& profile,
                       SeedKind seed = SeedKind::Hermite, double xiMax = 0.0,
                       int gridPerUnit = 1 << 14, int maxBounces = 1024);

// phi(alpha(t)) - phi(beta(t)) - 2.
double moore_residual(const MooreMap& map, const LengthProfile& profile,
                      double t);

} // namespace varstring
