#pragma once
// Shifted-convolution Dirichlet series in their absolute-convergence region:
//   D(s; h)        = sum_n a(n+h) conj(b(n)) n^{-(s+k-1)}
//   D(s; h; delta) = same with denominator (n + h*delta/2)^{s+k-1}
//   Z_Q(s, w)      = sum over ell_1 m_1 = ell_2 m_2 + hQ of
//                    A(m_1) conj(A(m_2)) (1 + hQ/(ell_2 m_2))^{(k-1)/2}
//                    (ell_2 m_2)^{-s} (hQ)^{-(w+(k-1)/2)}
// plus the gamma-factor function G(s,u), Eisenstein Fourier coefficients
// rho_a(s,m) at the cusp 1/w of Gamma_0(N), the restricted zeta zeta_{Q,a},
// and a numerical verification of the triple-Mellin collapse that converts
// between Z_Q and the plain double sum.
//
// All tail certificates use the measured coefficient envelope
// |a(n)| <= C n^{(k-1)/2 + 1/4 + eps} (heuristic-certified: C is taken from
// the computed range, Ramanujan-type bounds are not assumed).

#include <vector>

#include "halfint/numeric.hpp"
#include "halfint/qexp.hpp"

namespace halfint {

struct ShiftedSeriesParams {
    Complex s{2.5, 0.0};
    Complex w{2.5, 0.0};
    i64 h = 1;
    double delta = 0.0;
    i64 Q = 1;
    i64 ell_1 = 1;
    i64 ell_2 = 1;
    i64 budget = 0;         // coefficient truncation (0: derive from inputs)
    double tail_tol = 1e-8; // certified-tail tolerance

    // s' = s - 1/2 + w + (k-1)/2
    Complex s_prime(double k) const { return s - 0.5 + w + 0.5 * (k - 1.0); }
    void validate() const;
};

struct SeriesValue {
    Complex value;
    double tail_bound = 0.0;
};

// D(s; h) truncated at n <= min(f.M - h, g.M), with certified tail.
// Requires Re(s) > 1; the tail certificate needs Re(s) > 3/2 + margin.
SeriesValue D_series(const QExpansion& f, const QExpansion& g, Complex s, i64 h,
                     double tail_tol = 1e-8);

// delta-perturbed variant; delta = 0 reproduces D_series bit-for-bit.
SeriesValue D_series_delta(const QExpansion& f, const QExpansion& g, Complex s,
                           i64 h, double delta, double tail_tol = 1e-8);

struct ZSolution {
    i64 m1, m2, h;
};

// All (m1, m2, h) with m1, m2 in the support of f, m2 <= m2_cap, h in
// [1, h_cap], and ell_1 m1 = ell_2 m2 + hQ.  Deterministic (m1, m2) order.
std::vector<ZSolution> z_solutions(const QExpansion& f, i64 Q, i64 ell_1,
                                   i64 ell_2, i64 m2_cap, i64 h_cap);

struct ZQResult {
    Complex value;
    double tail_bound = 0.0;
    i64 solution_count = 0;
    i64 m2_cap = 0;
    i64 h_cap = 0;
};

// Normalized double Dirichlet series Z_{Q,ell_1,ell_2}(s,w) as displayed above.
ZQResult Z_Q_bruteforce(const QExpansion& f, Complex s, Complex w, i64 Q,
                        i64 ell_1, i64 ell_2);

// Oldform-normalized variant Z_{Q,f(ell_1 .), f(ell_2 .)}(s,w) =
//   sum a(m1) conj(a(m2)) (ell_2 m2)^{-(s+k-1)} (hQ)^{-(w+(k-1)/2)}
// over the same truncated solution set.
ZQResult Z_Q_oldform(const QExpansion& f, Complex s, Complex w, i64 Q, i64 ell_1,
                     i64 ell_2);

struct TwoZReport {
    Complex z_normalized;     // Z_{Q,ell_1,ell_2}
    Complex z_oldform_scaled; // (ell_1 ell_2)^{(k-1)/2} Z_{Q,f(ell_1.),f(ell_2.)}
    double factor = 1.0;      // (ell_1 ell_2)^{(k-1)/2}
    double abs_diff = 0.0;
};

// Compatibility of the two double Dirichlet series on the shared truncated
// range: Z_{Q,ell_1,ell_2} = (ell_1 ell_2)^{(k-1)/2} Z_{Q,f(ell_1.),f(ell_2.)}.
TwoZReport two_z_relation_check(const QExpansion& f, Complex s, Complex w, i64 Q,
                                i64 ell_1, i64 ell_2);

// G(s,u) = (1/2)(4 pi)^k Gamma(s+u-1) Gamma(s-u) Gamma(1-s)
//          / (Gamma(u) Gamma(1-u) Gamma(s+k-1));  u <-> 1-u invariant.
Complex gamma_factor_G(Complex s, Complex u, double k);

// Level sanity for the Eisenstein layer: N = 4r with r odd squarefree.
bool is_compliant_level(i64 N);

struct RhoResult {
    Complex value;
    double tail_bound = 0.0;
};

// rho_a(s, m) at the cusp a = 1/w of Gamma_0(N):
//   (wN)^{-s} sum_{c >= 1, (c, N/w) = 1} c^{-2s} c_{cw}(m),
// truncated at c <= c_max (c_{q} is the classical Ramanujan sum; m = 0 gives
// phi(cw)).  m != 0 needs Re(s) > 1/2; m = 0 needs Re(s) > 1.
RhoResult eisenstein_rho(i64 N, i64 w_cusp, Complex s, i64 m, i64 c_max);

// Closed Euler-product form of the constant term rho_a(s) (m = 0):
//   phi(w)(wN)^{-s} (zeta(2s-1)/zeta(2s))
//   prod_{p | N} (1-p^{-2s})^{-1} prod_{p | N/w} (1-p^{1-2s}).
Complex eisenstein_rho_closed(i64 N, i64 w_cusp, Complex s);

// Exact finite Euler product for zeta(z) * sum_{(c,N/w)=1} c^{-z} c_{cw}(m),
// m != 0.  Valid by analytic continuation for Re(z) >= 1 as well, which is
// what makes zeta_Q_a evaluable on Re(u) = 1/2.
Complex ramanujan_dirichlet_zeta_mul(i64 N, i64 w_cusp, Complex z, i64 m);

struct ZetaQAResult {
    Complex value;
    double tail_bound = 0.0;
    i64 h_terms = 0;
};

// zeta_{Q,a}(s,u) = zeta(2-2u) sum_{h>=1} rho_a(1-u, -hQ) (hQ)^{-(s+u-1/2)},
// evaluated through the zeta-cancelled Euler form of each rho_a term.
ZetaQAResult zeta_Q_a(i64 N, i64 w_cusp, Complex s, Complex u, i64 Q, i64 h_max);

struct TripleMellinReport {
    Complex contour_side;
    Complex direct_side;
    double abs_diff = 0.0;
    double contour_tail = 0.0; // kernel-envelope estimate beyond |Im u| = V
    i64 solution_count = 0;
};

// Verifies (2 pi i)^{-1} int_(gamma) Z_Q(s+w-u, u-(k-1)/2)
//   Gamma(w+(k-1)/2-u) Gamma(u) / Gamma(w+(k-1)/2) du
//   = sum A(m1) conj(A(m2)) (ell_2 m2)^{-s} (ell_1 m1)^{-w}
// on the truncated solution set with m1, m2 <= m_cap.  Requires
// 0 < gamma_abscissa < Re(w) + (k-1)/2 (strict Barnes contour).
TripleMellinReport triple_mellin_inner_check(const QExpansion& f, Complex s,
                                             Complex w, i64 Q, i64 ell_1,
                                             i64 ell_2, i64 m_cap,
                                             double gamma_abscissa, double V);

} // namespace halfint
