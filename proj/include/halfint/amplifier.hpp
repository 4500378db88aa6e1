#pragma once
// Amplified character averages and their congruence-split decomposition.
//
// The central object is
//   S = sum_{psi mod Q} | sum_{ell} psi(ell) conj(chi'(ell)) |^2
//                       | g(1,conj(chi))^{-1} sum_m A(m) g(m,psi) H(m/X) |^2
// where ell runs over primes in [L, 2L] coprime to N*Q, chi'(n) = chi(n)(n|Q),
// A(m) are the normalized coefficients of the form, and H is a smooth bump
// supported on [1,2].  Everything here is evaluated by direct finite sums so
// that the Parseval identity and the three-way congruence split can be checked
// as exact identities.

#include <functional>
#include <vector>

#include "halfint/chars.hpp"
#include "halfint/cutoff.hpp"
#include "halfint/numeric.hpp"
#include "halfint/qexp.hpp"

namespace halfint {

struct AmplifierParams {
    double L = 2.0; // prime window [L, 2L]
    double X = 100.0;
    i64 Q = 1;
    i64 ell_1 = 1;
    i64 ell_2 = 1;
};

// Primes p with L <= p <= 2L and gcd(p, coprime_to) = 1, ascending.
std::vector<i64> prime_window(double L, i64 coprime_to);

// chi'(n) = chi(n) * (n|Q): the quadratic-symbol modification of chi.
Complex chi_prime(const DirichletCharacter& chi, i64 n);

// T(psi) = g(1, conj(chi))^{-1} sum_m A(m) g(m, psi) H(m/X).
// gauss_row holds g(r, psi) for r = 0..Q-1 (g(m, psi) depends on m mod Q).
Complex amplifier_inner_sum(const QExpansion& f, const std::vector<Complex>& gauss_row,
                            Complex g1_chibar, const SmoothCutoff& H, double X);

// Brute-force S as displayed above.  chi must be primitive (|g(1,chi)|^2 = Q).
double amplified_sum_direct(const QExpansion& f, const DirichletCharacter& chi,
                            const SmoothCutoff& H, double X, double L);

// Independent evaluation of the same S through the a-domain: builds
// F(psi) = amplifier(psi) * T(psi), transforms F̂(a) = phi(Q)^{-1/2} sum_psi
// F(psi) conj(psi(a)), and returns sum_{(a,Q)=1} |F̂(a)|^2.
double amplified_sum_parseval(const QExpansion& f, const DirichletCharacter& chi,
                              const SmoothCutoff& H, double X, double L);

struct ParsevalResult {
    double lhs; // sum_psi |F(psi)|^2
    double rhs; // sum_{(a,Q)=1} |F̂(a)|^2
};

// F is indexed against enumerate_characters(Q) (principal first).
ParsevalResult parseval_check(i64 Q, const std::vector<Complex>& F);

struct SplitSums {
    Complex S1; // m1*ell1 = m2*ell2
    Complex S2; // m1*ell1 = m2*ell2 + hQ, h >= 1
    Complex S3; // m1*ell1 + hQ = m2*ell2, h >= 1
};

// S_i = sum A(m1) conj(A(m2)) H(m1/X) H(m2/X) over the respective congruence
// class of m1*ell1 - m2*ell2 modulo Q.  Requires f.M >= 2X.
SplitSums shifted_split_sums(const QExpansion& f, const SmoothCutoff& H, double X,
                             i64 ell_1, i64 ell_2, i64 Q);

// Unsplit congruence sum over m1*ell1 = m2*ell2 (mod Q); equals S1+S2+S3.
Complex congruence_sum_unsplit(const QExpansion& f, const SmoothCutoff& H, double X,
                               i64 ell_1, i64 ell_2, i64 Q);

struct AmplificationReport {
    double S = 0.0;           // amplified sum (left side)
    Complex rhs_statement;    // phi(Q) sum chi'(l1) conj(chi'(l2)) (S1+S2+S3)
    Complex rhs_proof;        // same with the character arguments swapped
    double slack = 0.0;       // Re(rhs_statement) - S  (>= 0 expected)
    double scale = 0.0;       // max(|S|, |Re rhs|); slack tolerance reference
    double single_term = 0.0; // (#ell)^2 |T(chi')|^2, the psi = chi' term
    double single_slack = 0.0; // S - single_term (>= 0: sum of nonnegatives)
    std::vector<i64> primes;
};

// Verifies S <= phi(Q) Re sum_{l1,l2} chi'(l1) conj(chi'(l2)) (S1+S2+S3) and
// the single-summand lower bound S >= (psi = chi' contribution).
AmplificationReport amplification_inequality_check(const QExpansion& f,
                                                   const DirichletCharacter& chi,
                                                   const SmoothCutoff& H, double X,
                                                   double L);

struct GrowthPoint {
    double X = 0.0;
    Complex value;
};

struct GrowthScan {
    std::vector<GrowthPoint> points;
    double slope = 0.0;     // least-squares slope of log|value| vs log X
    double intercept = 0.0; // fitted log-constant
    bool degenerate = false; // fewer than two nonzero values: no fit
};

// Least-squares fit of log|v| against log X over the nonzero points.
GrowthScan fit_loglog(const std::vector<GrowthPoint>& points);

// Diagonal growth: S1(X) across X_grid with fitted exponent.
GrowthScan diagonal_growth_scan(const QExpansion& f, i64 ell_1, i64 ell_2,
                                const std::vector<double>& X_grid,
                                const SmoothCutoff& H = SmoothCutoff());

struct OffdiagRow {
    double X = 0.0;
    i64 Q = 1;
    Complex S2;
    double stat = 0.0; // |S2| sqrt(Q) / (X * ell^{1.1})
};

struct OffdiagQSummary {
    i64 Q = 1;
    double slope = 0.0; // X-exponent of |S2| at this Q
    double stat_max = 0.0;
    bool degenerate = false;
};

struct OffdiagReport {
    std::vector<OffdiagRow> rows;
    std::vector<OffdiagQSummary> summaries;
};

// Off-diagonal scaling: S2 over the (X, Q) grid at fixed ell_1 = ell_2 = ell,
// with the normalized statistic |S2| sqrt(Q) / (X ell^{1.1}).
OffdiagReport offdiagonal_scaling_scan(const QExpansion& f,
                                       const std::vector<double>& X_grid,
                                       const std::vector<i64>& Q_list, i64 ell,
                                       const SmoothCutoff& H = SmoothCutoff());

} // namespace halfint
