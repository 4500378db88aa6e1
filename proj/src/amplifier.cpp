#include "halfint/amplifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "halfint/arith.hpp"

namespace halfint {

std::vector<i64> prime_window(double L, i64 coprime_to) {
    if (L < 2.0) throw std::invalid_argument("prime_window: L must be >= 2");
    if (coprime_to < 1) throw std::invalid_argument("prime_window: modulus must be positive");
    i64 hi = (i64)std::floor(2.0 * L);
    std::vector<i64> out;
    for (i64 p : primes_up_to(hi))
        if ((double)p >= L && gcd_ll(p, coprime_to) == 1) out.push_back(p);
    return out;
}

Complex chi_prime(const DirichletCharacter& chi, i64 n) {
    return chi(n) * (double)kronecker(n, chi.modulus());
}

namespace {

// g(r, psi) for r = 0..Q-1 by direct summation.
std::vector<Complex> gauss_row_table(const DirichletCharacter& psi) {
    i64 Q = psi.modulus();
    std::vector<Complex> row((size_t)Q, Complex(0.0, 0.0));
    for (i64 r = 0; r < Q; ++r) {
        Complex acc(0.0, 0.0);
        for (i64 u = 0; u < Q; ++u) {
            Complex pu = psi(u);
            if (pu != Complex(0.0, 0.0))
                acc += pu * unit_e((double)((r * u) % Q) / (double)Q);
        }
        row[(size_t)r] = acc;
    }
    return row;
}

// Support of f restricted to the H-window (X, 2X), with weights H(m/X).
struct WindowTerm {
    i64 m;
    Complex A;
    double w;
};

std::vector<WindowTerm> window_terms(const QExpansion& f, const SmoothCutoff& H,
                                     double X) {
    if (!(X > 0.0)) throw std::invalid_argument("amplifier: X must be positive");
    if (2.0 * X > (double)f.M + 1.0)
        throw std::invalid_argument("amplifier: coefficient range must cover 2X");
    double km1 = 0.5 * (f.k() - 1.0);
    std::vector<WindowTerm> out;
    for (const auto& [m, am] : f.support) {
        if (m < 1) continue;
        double x = (double)m / X;
        if (x <= 1.0) continue;
        if (x >= 2.0) break;
        double A = (double)am * std::pow((double)m, -km1);
        out.push_back({m, Complex(A, 0.0), H(x)});
    }
    return out;
}

double loglog_slope_guard(const std::vector<GrowthPoint>& pts, double& intercept,
                          bool& degenerate) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& p : pts) {
        double v = std::abs(p.value);
        if (v <= 0.0) continue;
        double lx = std::log(p.X), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) {
        degenerate = true;
        intercept = 0.0;
        return 0.0;
    }
    degenerate = false;
    double denom = (double)n * sxx - sx * sx;
    double slope = ((double)n * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / (double)n;
    return slope;
}

} // namespace

Complex amplifier_inner_sum(const QExpansion& f, const std::vector<Complex>& gauss_row,
                            Complex g1_chibar, const SmoothCutoff& H, double X) {
    i64 Q = (i64)gauss_row.size();
    Complex acc(0.0, 0.0);
    for (const auto& t : window_terms(f, H, X))
        acc += t.A * t.w * gauss_row[(size_t)(t.m % Q)];
    return acc / g1_chibar;
}

double amplified_sum_direct(const QExpansion& f, const DirichletCharacter& chi,
                            const SmoothCutoff& H, double X, double L) {
    i64 Q = chi.modulus();
    Complex g1 = gauss_sum(1, chi.conjugate());
    if (std::abs(g1) < 1e-9)
        throw std::invalid_argument(
            "amplified_sum_direct: g(1, conj(chi)) vanishes (chi must be primitive)");
    std::vector<i64> primes = prime_window(L, f.N * Q);

    double S = 0.0;
    for (const auto& psi : enumerate_characters(Q)) {
        Complex amp(0.0, 0.0);
        for (i64 p : primes) amp += psi(p) * std::conj(chi_prime(chi, p));
        Complex T = amplifier_inner_sum(f, gauss_row_table(psi), g1, H, X);
        S += std::norm(amp) * std::norm(T);
    }
    return S;
}

double amplified_sum_parseval(const QExpansion& f, const DirichletCharacter& chi,
                              const SmoothCutoff& H, double X, double L) {
    i64 Q = chi.modulus();
    Complex g1 = gauss_sum(1, chi.conjugate());
    if (std::abs(g1) < 1e-9)
        throw std::invalid_argument(
            "amplified_sum_parseval: g(1, conj(chi)) vanishes (chi must be primitive)");
    std::vector<i64> primes = prime_window(L, f.N * Q);

    std::vector<DirichletCharacter> chars = enumerate_characters(Q);
    std::vector<Complex> F;
    F.reserve(chars.size());
    for (const auto& psi : chars) {
        Complex amp(0.0, 0.0);
        for (i64 p : primes) amp += psi(p) * std::conj(chi_prime(chi, p));
        F.push_back(amp * amplifier_inner_sum(f, gauss_row_table(psi), g1, H, X));
    }
    return parseval_check(Q, F).rhs;
}

ParsevalResult parseval_check(i64 Q, const std::vector<Complex>& F) {
    std::vector<DirichletCharacter> chars = enumerate_characters(Q);
    if (F.size() != chars.size())
        throw std::invalid_argument(
            "parseval_check: F must have one entry per character mod Q");
    double lhs = 0.0;
    for (const Complex& v : F) lhs += std::norm(v);

    double rhs = 0.0;
    double phi_inv_sqrt = 1.0 / std::sqrt((double)euler_phi(Q));
    for (i64 a = 0; a < Q; ++a) {
        if (gcd_ll(a, Q) != 1) continue;
        Complex hat(0.0, 0.0);
        for (size_t j = 0; j < chars.size(); ++j)
            hat += F[j] * std::conj(chars[j](a));
        rhs += std::norm(phi_inv_sqrt * hat);
    }
    return {lhs, rhs};
}

SplitSums shifted_split_sums(const QExpansion& f, const SmoothCutoff& H, double X,
                             i64 ell_1, i64 ell_2, i64 Q) {
    if (ell_1 < 1 || ell_2 < 1 || Q < 1)
        throw std::invalid_argument("shifted_split_sums: ell_1, ell_2, Q must be positive");
    std::vector<WindowTerm> terms = window_terms(f, H, X);
    SplitSums ss;
    for (const auto& t1 : terms)
        for (const auto& t2 : terms) {
            i64 diff = t1.m * ell_1 - t2.m * ell_2;
            if (diff % Q != 0) continue;
            Complex v = t1.A * std::conj(t2.A) * (t1.w * t2.w);
            if (diff == 0)
                ss.S1 += v;
            else if (diff > 0)
                ss.S2 += v;
            else
                ss.S3 += v;
        }
    return ss;
}

Complex congruence_sum_unsplit(const QExpansion& f, const SmoothCutoff& H, double X,
                               i64 ell_1, i64 ell_2, i64 Q) {
    if (ell_1 < 1 || ell_2 < 1 || Q < 1)
        throw std::invalid_argument("congruence_sum_unsplit: ell_1, ell_2, Q must be positive");
    std::vector<WindowTerm> terms = window_terms(f, H, X);
    Complex acc(0.0, 0.0);
    for (const auto& t1 : terms)
        for (const auto& t2 : terms) {
            if ((t1.m * ell_1 - t2.m * ell_2) % Q != 0) continue;
            acc += t1.A * std::conj(t2.A) * (t1.w * t2.w);
        }
    return acc;
}

AmplificationReport amplification_inequality_check(const QExpansion& f,
                                                   const DirichletCharacter& chi,
                                                   const SmoothCutoff& H, double X,
                                                   double L) {
    i64 Q = chi.modulus();
    AmplificationReport rep;
    rep.primes = prime_window(L, f.N * Q);
    rep.S = amplified_sum_direct(f, chi, H, X, L);

    double phiQ = (double)euler_phi(Q);
    for (i64 l1 : rep.primes)
        for (i64 l2 : rep.primes) {
            SplitSums ss = shifted_split_sums(f, H, X, l1, l2, Q);
            Complex total = ss.S1 + ss.S2 + ss.S3;
            rep.rhs_statement += chi_prime(chi, l1) * std::conj(chi_prime(chi, l2)) * total;
            rep.rhs_proof += chi_prime(chi, l2) * std::conj(chi_prime(chi, l1)) * total;
        }
    rep.rhs_statement *= phiQ;
    rep.rhs_proof *= phiQ;
    rep.slack = rep.rhs_statement.real() - rep.S;
    rep.scale = std::max(std::abs(rep.S), std::abs(rep.rhs_statement.real()));

    // single-summand lower bound: the psi = chi' term of S alone
    Complex g1 = gauss_sum(1, chi.conjugate());
    std::vector<Complex> row((size_t)Q, Complex(0.0, 0.0));
    for (i64 r = 0; r < Q; ++r) {
        Complex acc(0.0, 0.0);
        for (i64 u = 0; u < Q; ++u) {
            if (Q > 1 && gcd_ll(u, Q) != 1) continue;
            acc += chi_prime(chi, u) * unit_e((double)((r * u) % Q) / (double)Q);
        }
        row[(size_t)r] = acc;
    }
    Complex T = amplifier_inner_sum(f, row, g1, H, X);
    double count = (double)rep.primes.size();
    rep.single_term = count * count * std::norm(T);
    rep.single_slack = rep.S - rep.single_term;
    return rep;
}

GrowthScan fit_loglog(const std::vector<GrowthPoint>& points) {
    GrowthScan scan;
    scan.points = points;
    scan.slope = loglog_slope_guard(points, scan.intercept, scan.degenerate);
    return scan;
}

GrowthScan diagonal_growth_scan(const QExpansion& f, i64 ell_1, i64 ell_2,
                                const std::vector<double>& X_grid,
                                const SmoothCutoff& H) {
    std::vector<GrowthPoint> pts;
    for (double X : X_grid)
        pts.push_back({X, shifted_split_sums(f, H, X, ell_1, ell_2, /*Q=*/1).S1});
    return fit_loglog(pts);
}

OffdiagReport offdiagonal_scaling_scan(const QExpansion& f,
                                       const std::vector<double>& X_grid,
                                       const std::vector<i64>& Q_list, i64 ell,
                                       const SmoothCutoff& H) {
    OffdiagReport rep;
    double ell_pow = std::pow((double)ell, 1.1); // ell^{1+eps} with eps = 0.1
    for (i64 Q : Q_list) {
        std::vector<GrowthPoint> pts;
        OffdiagQSummary sum;
        sum.Q = Q;
        for (double X : X_grid) {
            Complex S2 = shifted_split_sums(f, H, X, ell, ell, Q).S2;
            double stat = std::abs(S2) * std::sqrt((double)Q) / (X * ell_pow);
            rep.rows.push_back({X, Q, S2, stat});
            pts.push_back({X, S2});
            sum.stat_max = std::max(sum.stat_max, stat);
        }
        double intercept;
        sum.slope = loglog_slope_guard(pts, intercept, sum.degenerate);
        rep.summaries.push_back(sum);
    }
    return rep;
}

} // namespace halfint
