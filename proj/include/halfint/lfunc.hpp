#pragma once
// Twisted completed L-functions of half-integer weight forms.
//
// The completed additive twist is
//   L*(s, f, u/Q) = (sqrt(N) Q)^s int_0^inf f(iy + u/Q) y^{s + (k-1)/2} dy/y,
// evaluated by splitting the integral at y0: the upper part becomes a sum of
// incomplete-gamma terms at the twist u, the lower part is reflected through
// the Gamma_0(N) matrix identity into the same kind of sum at the dual twist
// v with N u v = -1 (mod Q), weighted by the Fricke eigenvalue, the
// nebentypus value at Q, and explicit eps_Q / Kronecker factors.
#include <optional>
#include <vector>

#include "halfint/chars.hpp"
#include "halfint/cutoff.hpp"
#include "halfint/numeric.hpp"
#include "halfint/qexp.hpp"

namespace halfint {

struct TwistedLResult {
    Complex s;
    Complex value;
    double y0 = 0.0;
    double truncation_error = 0.0;
    std::optional<Complex> empirical_root_number;
};

// Default split point: the symmetry point of the functional equation.
double default_split_point(const QExpansion& f, i64 Q);

// Completed additive twist; requires gcd(Q, N) = 1 and gcd(u, Q) = 1 (u = 0
// allowed when Q = 1). eps_f is the empirical Fricke eigenvalue from qexp.
TwistedLResult completed_L_additive(const QExpansion& f, Complex s, i64 u, i64 Q,
                                    double y0, Complex eps_f);

// Ratio L*(s,f,u/Q) / L*(1-s,f,v/Q), both sides evaluated independently;
// has modulus 1 on Re s = 1/2 when f is an eigenform.
Complex additive_root_number(const QExpansion& f, Complex s, i64 u, i64 Q,
                             Complex eps_f);

// Completed multiplicative twist L*(s,f,chi) = g(1, chibar)^{-1} sum_u
// chibar(u) L*(s,f,u/Q); chi must be primitive. When with_root_number is set,
// the dual-side average (with chi' = chi * (./Q)) is also computed and the
// empirical root number recorded.
TwistedLResult completed_L_multiplicative(const QExpansion& f, Complex s,
                                          const DirichletCharacter& chi,
                                          Complex eps_f,
                                          bool with_root_number = false);

// L(1/2, f, chi): the completed value divided by its exact prefactor
// (sqrt(N) Q)^s (2 pi)^{-(s+(k-1)/2)} Gamma(s+(k-1)/2) at s = 1/2.
Complex central_value(const QExpansion& f, const DirichletCharacter& chi,
                      Complex eps_f);

// Batch: completed multiplicative twists at one s for every primitive chi mod
// Q, sharing one incomplete-gamma weight table across all twists (the sweep
// hot path). Results are ordered by character index.
struct SweepEntry {
    i64 chi_index;
    TwistedLResult result;
};
std::vector<SweepEntry> sweep_primitive_twists(const QExpansion& f, Complex s,
                                               i64 Q, Complex eps_f,
                                               bool with_root_numbers);

// Smoothed coefficient sums (H supported on [1,2]):
//   sum_m A(m) chi(m) H(m/x)
Complex smoothed_coeff_sum(const QExpansion& f, const DirichletCharacter& chi,
                           const SmoothCutoff& H, double x);
//   g(1, chibar)^{-1} sum_m A(m) g(m, psi) H(m/x)
Complex smoothed_coeff_sum_gauss(const QExpansion& f, const DirichletCharacter& psi,
                                 const DirichletCharacter& chi_norm,
                                 const SmoothCutoff& H, double x);

// Empirical nebentypus chi_f(d) of f (probed through automorphy, cached per
// (level, spec, d)); exposed for tests.
Complex form_nebentypus(const QExpansion& f, i64 d);

} // namespace halfint
