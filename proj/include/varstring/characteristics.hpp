#pragma once

#include <utility>
#include <vector>

#include "varstring/profiles.hpp"

namespace varstring {

// Tabulated forward characteristic f' on [-L, xiMax]. The solution is
// u(x,t) = f(t+x) - f(t-x); the table is seeded from the initial data on
// [-L, L] and extended past L one reflection at a time with the moving-end
// reflection factor -((1-eta)/(1+eta)) * beta'(t)/alpha'(t) at t = alpha^{-1}(xi).
struct CharacteristicTable {
    LengthProfile profile;
    DampingConfig damping;
    double L = 1.0;
    double h = 1e-4;      // nominal grid step
    double xiMax = 0.0;
    bool transparent = false; // eta == 1: f' vanishes identically above L
    std::vector<double> xs;
    std::vector<double> fp;

    // Linear interpolation of f'. For transparent damping, exactly zero
    // above L (the jump at L is kept one-sided, not smeared).
    double fprime(double xi) const;
};

CharacteristicTable build_table(const InitialData& init,
                                const LengthProfile& profile,
                                const DampingConfig& damping,
                                double h = 0.0,
                                double ximax = 0.0);

// (u_t, u_x) at (x, t) from the table. Throws OutOfDomain for x outside
// [0, l(t)].
std::pair<double, double> oracle_ut_ux(const CharacteristicTable& table,
                                       double x, double t);

// E(t) = integral of f'^2 over the characteristic window [beta(t), alpha(t)],
// computed by trapezoid on the table's own grid with fractional end cells.
// The tolerance argument is accepted for interface symmetry with the spectral
// energy; the trapezoid rule is fixed by the table resolution.
double oracle_energy(const CharacteristicTable& table, double t, double quadTol = 0.0);

} // namespace varstring
