#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "varstring/moore.hpp"
#include "varstring/profiles.hpp"

namespace varstring {

using Complex = std::complex<double>;

// Exponent lattice value: -ln|gamma|/2 + i(2n+1)pi/2 below the transparent
// point, -ln|gamma|/2 + i n pi above it. Throws TransparentDamping inside
// the eta = 1 guard band.
Complex omega(int n, const DampingConfig& damping);

// Truncated generalized-Fourier representation
//   u(x,t) = sum c_n (e^{omega_n phi(t+x)} - e^{omega_n phi(t-x)}),
// with the symmetric mode window {-N..N-1} (eta < 1) or {-N..N} (eta > 1)
// so real data keeps the sums exactly real.
struct ModeSet {
    DampingConfig damping;
    MooreMap moore; // value copy; immutable after construction
    double L = 1.0;
    int N = 0;
    std::vector<int> indices; // ascending
    std::vector<Complex> omegas;
    std::vector<Complex> coeffs;
    double parsevalSum = 0.0; // S = 2 sum |omega_n c_n|^2

    std::size_t size() const { return indices.size(); }
};

// c_n = (1/(4 omega_n)) integral_{-L}^{L} h(x) e^{-omega_n phi(x)} dx with
// h the even extension of u0x plus the odd extension of u1. Adaptive
// panel quadrature, panel width tied a priori to the mode's oscillation
// period; quadTol is the absolute tolerance per coefficient.
ModeSet compute_coefficients(const InitialData& init, const MooreMap& moore,
                             const DampingConfig& damping, int N,
                             double quadTol = 1e-10, int threads = 1);

double eval_u(const ModeSet& modes, double x, double t);
double eval_ux(const ModeSet& modes, double x, double t);
double eval_ut(const ModeSet& modes, double x, double t);

// (u_t, u_x) in one sweep (shared series sums).
std::pair<double, double> eval_ut_ux(const ModeSet& modes, double x, double t);

// sum |omega_n c_n|^2 over the stored window.
double parseval_lhs(const ModeSet& modes);

// (1/8) integral_{-L}^{L} h^2 e^{ln|gamma| phi} / phi' dx, the independent
// quadrature side of the coefficient energy identity.
double parseval_rhs(const InitialData& init, const MooreMap& moore,
                    const DampingConfig& damping, double quadTol = 1e-10);

// Share of sum |omega_n c_n|^2 carried by the outermost 10% of modes.
double tail_fraction(const ModeSet& modes);

} // namespace varstring
