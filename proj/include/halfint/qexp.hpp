#pragma once
// q-expansion engine for half-integer weight test forms given by eta
// quotients: exact integer coefficient expansion, normalization, point
// evaluation with tail certificates, sup-norm estimation, the Fricke
// eigenvalue probe, and the coefficient cache file format.
#include <string>
#include <vector>
#include <optional>

#include "halfint/arith.hpp"
#include "halfint/numeric.hpp"

namespace halfint {

struct EtaFactor {
    i64 m;        // the dilation in eta(m z)
    int exponent; // may be negative
};

struct EtaQuotientSpec {
    std::vector<EtaFactor> factors;

    // Canonical "eta(8z)^3 * eta(2z)^-1" rendering (exponent 1 kept explicit).
    std::string to_string() const;
    // Parses the canonical rendering (whitespace-insensitive, '^1' optional).
    static EtaQuotientSpec parse(const std::string& text);
    int total_two_k() const; // sum of exponents = 2k
};

struct QExpansion {
    int two_k = 1;                 // weight k = two_k / 2
    i64 N = 0;                     // level (0 when not declared)
    i64 M = 0;                     // coefficients known for 0 <= n <= M
    std::vector<long long> a;      // exact integer coefficients a(0..M)
    i64 leading_q_power = 0;       // integral leading power (already folded into a)
    std::string spec_string;       // provenance of the expansion

    // Sparse view: the nonzero (n, a(n)) pairs, ascending n.
    std::vector<std::pair<i64, long long>> support;

    double k() const { return 0.5 * (double)two_k; }
    long long coeff(i64 n) const { return (n >= 0 && n <= M) ? a[n] : 0; }
    void rebuild_support();
};

// Expand prod_i eta(m_i z)^{e_i} to q^M with exact integer arithmetic.
// Throws std::domain_error when the leading q-power is non-integral or
// negative, std::overflow_error when coefficients leave the 64-bit range.
QExpansion expand_eta_quotient(const EtaQuotientSpec& spec, i64 M,
                               i64 declared_level = 0);

// A(n) = a(n) n^{-(k-1)/2}, n = 1..M (index 0 unused, kept 0).
std::vector<double> normalized_coeffs(const QExpansion& f);

// Smallest C with |a(n)| <= C n^exponent over the computed support
// (measured, not proved; used by tail certificates).
double coefficient_envelope(const QExpansion& f, double exponent);

struct EvalResult {
    Complex value;
    double tail_bound; // certified bound on the dropped tail
};

// f(z) = sum a(n) e(nz) with a certified geometric tail bound; throws
// precision_error if the certificate cannot meet tol.
EvalResult evaluate_with_tail(const QExpansion& f, Complex z, double tol = 1e-12);
Complex evaluate(const QExpansion& f, Complex z, double tol = 1e-12);

struct SupNormResult {
    double value = 0.0;       // max over the grid of |f(z)| y^{k/2}
    Complex argmax{0.0, 1.0};
    double grid_dx = 0.0;
    int y_levels = 0;
};

// Grid maximum of |f(z)| y^{k/2} over x in [0,1], y in [y_min, y_max] with
// local refinement; y_min defaults to 1/(3N) capped by what M supports.
SupNormResult sup_norm_estimate(const QExpansion& f, int nx = 256,
                                int ny = 140, int refine_rounds = 3);

struct FrickeResult {
    Complex eps;             // empirical W~_N eigenvalue
    double residual;         // spread of the ratio across probe points
    Complex ratio_fixed_point; // ratio at z = i/sqrt(N) (forced to e^{-i pi k})
};

// Empirical Fricke eigenvalue: W~_N f(z) = i^{-k} N^{k/2} (Nz)^{-k} f(-1/(Nz));
// the ratio (W~_N f)/f is measured at z = i/sqrt(N) and at off-fixed-point
// probes (the fixed point alone cannot distinguish eigenforms).
FrickeResult fricke_eigenvalue(const QExpansion& f);

// Automorphy probe chi_f(d): builds gamma in Gamma_0(N) with lower-right
// entry = d (gcd(d, N) = 1, d odd, taken positive) and returns
// f(gamma z) / (j(gamma,z)^{two_k} f(z)).
Complex empirical_nebentypus(const QExpansion& f, i64 d);

// Shipped test forms.
QExpansion make_eta8_cubed(i64 M); // eta(8z)^3: two_k = 3, N = 64
QExpansion make_eta24(i64 M);      // eta(24z):  two_k = 1, N = 576

// Coefficient cache: CSV with header (two_k, N, M, spec, FNV-1a hash of the
// payload); written atomically (temp file + rename); bit-exact round-trip.
void write_coefficient_cache(const QExpansion& f, const std::string& path);
QExpansion read_coefficient_cache(const std::string& path);

} // namespace halfint
