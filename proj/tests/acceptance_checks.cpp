// Acceptance gate: fourteen end-to-end checks, one PASS/FAIL line each, with
// pinned tolerances and per-check wall-clock budgets.  Exit code 0 iff every
// check passes inside its budget.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "halfint/amplifier.hpp"
#include "halfint/arith.hpp"
#include "halfint/chars.hpp"
#include "halfint/geom.hpp"
#include "halfint/lfunc.hpp"
#include "halfint/numeric.hpp"
#include "halfint/qexp.hpp"
#include "halfint/quadrature.hpp"
#include "halfint/selberg.hpp"
#include "halfint/shifted.hpp"
#include "halfint/special.hpp"
#include "test_helpers.hpp"

using namespace halfint;

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return std::string(buf);
}

double rel(Complex a, Complex b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// least-squares slope of y against x
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = (double)x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct CaseResult {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void run(int id, double budget_s, const std::function<CaseResult()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CaseResult r;
    try {
        r = fn();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = fmt("exception: %s", e.what());
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
    bool in_budget = el <= budget_s;
    bool ok = r.pass && in_budget;
    if (!ok) ++g_failures;
    printf("[%02d] %s (%.1fs) %s%s\n", id, ok ? "PASS" : "FAIL", el,
           r.detail.c_str(),
           (r.pass && !in_budget) ? fmt(" [exceeded %.0fs budget]", budget_s).c_str()
                                  : "");
    fflush(stdout);
}

// --------------------------------------------------------------------------

CaseResult c01_theta_multiplier() {
    std::mt19937 rng(20260816u);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        IntegerMatrix2x2 g = testutil::random_gamma0(4, rng);
        Complex z = testutil::random_z(rng, 0.5, 2.0);
        double dev =
            std::abs(jacobi_theta(g.act(z)) - cocycle_j(g, z) * jacobi_theta(z));
        worst = std::max(worst, dev);
    }
    return {worst < 1e-10,
            fmt("theta multiplier on 50 random Gamma_0(4) elements: max dev %.2e "
                "(tol 1e-10)",
                worst)};
}

CaseResult c02_gauss_sums() {
    double worst_mod = 0.0, worst_sep = 0.0;
    long n_chars = 0;
    for (i64 Q = 1; Q <= 200; ++Q) {
        for (const auto& chi : primitive_characters(Q)) {
            ++n_chars;
            Complex g1 = gauss_sum(1, chi);
            worst_mod = std::max(worst_mod,
                                 std::abs(std::abs(g1) - std::sqrt((double)Q)));
            auto chibar = chi.conjugate();
            for (i64 n = 0; n < Q; ++n)
                worst_sep = std::max(
                    worst_sep, std::abs(gauss_sum(n, chi) - chibar(n) * g1));
        }
    }
    return {worst_mod < 1e-10 && worst_sep < 1e-10,
            fmt("Gauss sums, %ld primitive characters Q<=200: max ||g|-sqrt(Q)| "
                "%.2e, max separability dev %.2e (tol 1e-10)",
                n_chars, worst_mod, worst_sep)};
}

CaseResult c03_parseval() {
    std::mt19937 rng(7u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst_pv = 0.0;
    for (i64 Q : {5, 7, 12, 36}) {
        size_t n = enumerate_characters(Q).size();
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Complex> F(n);
            for (auto& v : F) v = Complex(gauss(rng), gauss(rng));
            auto pr = parseval_check(Q, F);
            worst_pv = std::max(worst_pv, std::abs(pr.lhs - pr.rhs) /
                                              std::max(1.0, pr.lhs));
        }
    }
    if (worst_pv >= 1e-10)
        return {false, fmt("Parseval identity dev %.2e >= 1e-10", worst_pv)};

    auto f = make_eta8_cubed(420);
    SmoothCutoff H;
    double worst_split = 0.0;
    for (i64 Q : {7, 11})
        for (auto [l1, l2] : {std::pair<i64, i64>{1, 1}, {3, 5}}) {
            auto s = shifted_split_sums(f, H, 200.0, l1, l2, Q);
            Complex uns = congruence_sum_unsplit(f, H, 200.0, l1, l2, Q);
            worst_split = std::max(worst_split, std::abs(s.S1 + s.S2 + s.S3 - uns) /
                                                    std::max(1.0, std::abs(uns)));
        }
    if (worst_split >= 1e-12)
        return {false, fmt("congruence split completeness dev %.2e >= 1e-12",
                           worst_split)};

    auto chi = primitive_characters(11)[0];
    auto rep = amplification_inequality_check(f, chi, H, 200.0, 3.0);
    bool ineq = rep.slack >= -1e-9 * rep.scale && rep.single_slack >= -1e-9 * rep.scale;
    return {ineq, fmt("Parseval dev %.2e, split dev %.2e, inequality slack %.3e "
                      "and single-term slack %.3e at scale %.3e",
                      worst_pv, worst_split, rep.slack, rep.single_slack,
                      rep.scale)};
}

CaseResult c04_lvalue_consistency(const QExpansion& f, Complex eps) {
    double worst_split = 0.0;
    for (i64 Q : {1, 5, 7, 11}) {
        i64 u = (Q == 1) ? 0 : 1;
        double y0 = default_split_point(f, Q);
        for (Complex s : {Complex(0.5, 0.0), Complex(1.5, 1.2)}) {
            Complex v1 = completed_L_additive(f, s, u, Q, y0, eps).value;
            Complex v2 = completed_L_additive(f, s, u, Q, 2.0 * y0, eps).value;
            Complex v3 = completed_L_additive(f, s, u, Q, 0.6 * y0, eps).value;
            worst_split = std::max({worst_split, rel(v1, v2), rel(v1, v3)});
        }
    }
    if (worst_split >= 1e-9)
        return {false, fmt("split-point dependence %.2e >= 1e-9", worst_split)};

    // direct Dirichlet series at s = 3 (absolutely convergent regime)
    const Complex s(3.0, 0.0);
    const Complex sp = s + Complex(0.5 * (f.k() - 1.0), 0.0);
    double worst_series = 0.0;
    for (i64 Q : {1, 5, 7, 11}) {
        for (i64 u : {i64(0), i64(1), i64(2)}) {
            if (Q == 1 && u > 0) continue;
            if (Q > 1 && u == 0) continue;
            Complex series = 0;
            for (const auto& [n, a] : f.support)
                series += (double)a * unit_e((double)(u * (n % Q)) / (double)Q) *
                          std::exp(-sp * std::log((double)n));
            series *= std::exp(s * std::log(std::sqrt((double)f.N) * (double)Q)) *
                      std::exp(-sp * std::log(TWO_PI)) * gamma_c(sp);
            Complex got =
                completed_L_additive(f, s, u, Q, default_split_point(f, Q), eps)
                    .value;
            worst_series = std::max(worst_series, rel(got, series));
        }
    }
    return {worst_series < 1e-8,
            fmt("split-point independence %.2e (tol 1e-9); s=3 series agreement "
                "%.2e (tol 1e-8)",
                worst_split, worst_series)};
}

CaseResult c05_root_numbers(const QExpansion& f, Complex eps) {
    const Complex s(0.5, 0.0);
    double worst_add = 0.0;
    int n_add = 0;
    for (i64 Q : {3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25}) {
        for (i64 u : {i64(1), i64(2)}) {
            if (n_add >= 20) break;
            if (gcd_ll(u, Q) != 1) continue;
            double dev = std::abs(std::abs(additive_root_number(f, s, u, Q, eps)) - 1.0);
            worst_add = std::max(worst_add, dev);
            ++n_add;
        }
    }
    double worst_mul = 0.0;
    int n_mul = 0;
    for (i64 Q : {5, 7, 11, 13}) {
        for (const auto& chi : primitive_characters(Q)) {
            if (n_mul >= 10) break;
            auto res = completed_L_multiplicative(f, s, chi, eps, true);
            if (!res.empirical_root_number)
                return {false, "multiplicative root number not computed"};
            worst_mul = std::max(
                worst_mul, std::abs(std::abs(*res.empirical_root_number) - 1.0));
            ++n_mul;
        }
        if (n_mul >= 10) break;
    }
    return {worst_add < 1e-6 && worst_mul < 1e-6 && n_add == 20 && n_mul == 10,
            fmt("| |eps|-1 | over %d additive twists: %.2e; over %d primitive "
                "multiplicative twists: %.2e (tol 1e-6)",
                n_add, worst_add, n_mul, worst_mul)};
}

CaseResult c06_m_function() {
    double worst3 = 0.0;
    for (Complex s : {Complex(2, 0), Complex(3, 0), Complex(2, 2)})
        for (Complex t : {Complex(0, 0), Complex(1, 0), Complex(5, 0)})
            for (double delta : {0.1, 0.01}) {
                MFunctionParams p{s, t, delta};
                Complex q = m_function(p, MMethod::quadrature);
                Complex hf = m_function(p, MMethod::hypergeometric_far);
                Complex hn = m_function(p, MMethod::hypergeometric_near);
                worst3 = std::max({worst3, rel(q, hf), rel(q, hn)});
            }
    if (worst3 >= 1e-6)
        return {false, fmt("three-representation dev %.2e >= 1e-6", worst3)};

    // delta -> 0 limit inside the convergent strip Re s < 1
    Complex s0(0.6, 0.0), t0(0.5, 0.0);
    Complex closed = m_function_delta0(s0, t0);
    double prev = INFINITY, final_err = 0.0;
    bool monotone = true;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        double err =
            std::abs(m_function({s0, t0, delta}, MMethod::quadrature) - closed);
        if (err >= prev) monotone = false;
        prev = err;
        final_err = err;
    }
    if (!monotone)
        return {false, "delta -> 0 error not monotonically decreasing"};

    // residue probe at the r = 0 pole s = 1/2 + i, delta = 1e-3
    Complex t1(1.0, 0.0);
    Complex pole = Complex(0.5, 1.0);
    Complex h(1e-4, 0.0);
    Complex probe =
        h * m_function({pole + h, t1, 1e-3}, MMethod::hypergeometric_near);
    Complex res = m_residue(t1, 0);
    double res_dev = std::abs(probe - res) / std::abs(res);
    return {res_dev < 1e-3,
            fmt("three-representation dev %.2e (tol 1e-6); delta->0 monotone, "
                "final err %.2e (%.1f%% of closed form); residue probe dev %.2e "
                "(tol 1e-3)",
                worst3, final_err, 100.0 * final_err / std::abs(closed), res_dev)};
}

CaseResult c07_barnes() {
    double worst = 0.0, worst_absc = 0.0;
    for (Complex z : {Complex(1.2, 0), Complex(2.5, 0), Complex(3.0, 0.8)}) {
        for (double t : {0.5, 1.0, 2.0}) {
            Complex target = std::exp(-z * std::log(1.0 + t));
            Complex a = barnes_beta_integral(z, t, 0.45 * z.real());
            Complex b = barnes_beta_integral(z, t, 0.7 * z.real());
            worst = std::max(worst, std::abs(a - target));
            worst_absc = std::max(worst_absc, std::abs(a - b));
        }
    }
    return {worst < 1e-8 && worst_absc < 1e-9,
            fmt("Barnes contour vs (1+t)^{-z}: max dev %.2e (tol 1e-8); "
                "abscissa sensitivity %.2e (tol 1e-9)",
                worst, worst_absc)};
}

CaseResult c08_theta_integral() {
    double worst_pp = 0.0;
    for (double k : {0.75, 1.5, 2.5})
        for (i64 h : {i64(0), i64(1), i64(2), i64(5), i64(11)})
            for (double rho : {0.1, 0.3, 0.5, 0.7, 0.85}) {
                auto r = poisson_power_integral(k, h, rho);
                worst_pp = std::max(worst_pp, std::abs(r.quadrature - r.closed_form));
            }
    if (worst_pp >= 1e-8)
        return {false, fmt("Poisson power dev %.2e >= 1e-8", worst_pp)};

    auto f = make_eta8_cubed(500);
    DiscCenterFrame frame{Complex(0, 1)};
    double worst_b = 0.0;
    for (double rho : {0.2, 0.4, 0.6}) {
        Complex series = B_rho(f, f, frame, Complex(rho, 0), 72);
        Complex quad = B_rho_quadrature(f, f, frame, rho);
        worst_b = std::max(worst_b, std::abs(series - quad) /
                                        std::max(1.0, std::abs(quad)));
    }
    if (worst_b >= 1e-6)
        return {false, fmt("B(rho) series vs quadrature dev %.2e >= 1e-6", worst_b)};

    std::vector<i64> hs;
    for (i64 h = 0; h <= 20; ++h) hs.push_back(h);
    for (i64 h : {30, 50, 80, 120, 200, 350, 500}) hs.push_back(h);
    std::vector<double> rhos;
    for (double r = 0.0; r < 0.999; r += 0.013) rhos.push_back(r);
    rhos.push_back(0.999);
    auto scan = hyp_bound_property(1.5, hs, rhos);
    bool bounded = scan.max_value <= scan.bound * (1.0 + 1e-9);
    return {bounded, fmt("Poisson-power dev %.2e (tol 1e-8); B(rho) dev %.2e "
                         "(tol 1e-6); hyp envelope max %.6f vs 2^k = %.6f",
                         worst_pp, worst_b, scan.max_value, scan.bound)};
}

CaseResult c09_selberg() {
    // localizer closed form vs Fourier quadrature of its own h
    double worst_g = 0.0;
    for (double T : {2.0, 5.0, 10.0}) {
        auto loc = localizer({T});
        for (double xi : {0.0, 0.3, 1.0, 2.0}) {
            double fourier =
                integrate_real(
                    [&](double t) { return loc.h_side(t) * std::cos(t * xi); },
                    0.0, T + 26.0, 1e-12) /
                PI;
            worst_g = std::max(worst_g, std::abs(fourier - loc.g_side(xi)));
        }
    }
    if (worst_g >= 1e-9)
        return {false, fmt("localizer g closed-vs-Fourier dev %.2e >= 1e-9", worst_g)};

    // roundtrips for T in {2, 5, 10}
    double worst_rt = 0.0;
    for (double T : {2.0, 5.0, 10.0}) {
        auto loc = localizer({T});
        double xi_cap = 5.0 + 0.05 * T;
        double um = std::sinh(0.5 * xi_cap) * std::sinh(0.5 * xi_cap) + 2.0;
        // k -> h: Abel-derived k pushed forward through the Legendre route
        for (double t : {0.0, 0.5 * T, T, T + 2.0})
            worst_rt = std::max(worst_rt, std::abs(forward_single_step(
                                              loc.k_side, t, um) -
                                          loc.h_side(t)));
        // h -> (g, k) by Fourier + Abel
        auto inv = inverse_transform(loc.h_side);
        for (double xi : {0.0, 0.4, 1.2, 2.5})
            worst_rt = std::max(worst_rt, std::abs(inv.g_side(xi) - loc.g_side(xi)));
        for (double u : {0.0, 0.1, 0.5, 2.0})
            worst_rt = std::max(worst_rt, std::abs(inv.k_side(u) - loc.k_side(u)));
        // h -> k by Mehler-Fock
        for (double u : {0.1, 1.0, 10.0})
            worst_rt = std::max(worst_rt,
                                std::abs(mehler_fock_k(loc.h_side, u) - loc.k_side(u)));
    }
    if (worst_rt >= 1e-6)
        return {false, fmt("transform roundtrip dev %.2e >= 1e-6", worst_rt)};

    // three-step vs single-step on the exponential kernel
    auto k_exp = [](double u) { return std::exp(-u); };
    auto pair = forward_three_step(k_exp);
    double worst_route = 0.0;
    for (double t : {0.0, 1.0, 3.0})
        worst_route = std::max(
            worst_route, std::abs(pair.h_side(t) - forward_single_step(k_exp, t)));
    return {worst_route < 1e-6,
            fmt("localizer Fourier dev %.2e (tol 1e-9); roundtrips %.2e (tol "
                "1e-6); route agreement %.2e (tol 1e-6)",
                worst_g, worst_rt, worst_route)};
}

CaseResult c10_kernel_pairing() {
    auto f = make_eta8_cubed(2000);
    std::vector<double> Ts{3.0, 4.0, 5.0, 6.0};
    auto reports = kernel_pairing_check(f, f, Ts, 64);
    std::vector<double> xs, ys;
    double worst_ratio = 0.0;
    for (const auto& r : reports) {
        double lhs = std::abs(r.volume_pairing);
        if (lhs > r.bound + volume(64) * r.tail_estimate)
            return {false, fmt("T=%.0f: |vol*pairing| %.3e exceeds bound %.3e",
                               r.T, lhs, r.bound)};
        worst_ratio = std::max(worst_ratio, r.ratio);
        if (lhs > 0.0) {
            xs.push_back(r.T);
            ys.push_back(std::log(lhs));
        }
    }
    if (xs.size() < 3) return {false, "pairing vanished; no slope fit possible"};
    double slope = ls_slope(xs, ys);
    return {slope <= -1.3,
            fmt("|vol*pairing| <= bound at T in {3,4,5,6} (max ratio %.3f); "
                "log-slope %.3f (gate <= -1.3)",
                worst_ratio, slope)};
}

CaseResult c11_diagonal(const QExpansion& f_big) {
    std::vector<double> X_grid;
    for (int e = 12; e <= 16; ++e) X_grid.push_back(std::pow(2.0, e));
    auto diag = diagonal_growth_scan(f_big, 1, 1, X_grid);
    if (diag.degenerate) return {false, "diagonal scan degenerate"};
    bool diag_ok = diag.slope >= 0.9 && diag.slope <= 1.1;
    auto off = diagonal_growth_scan(f_big, 3, 5, X_grid);
    std::string note;
    bool off_ok;
    if (off.degenerate) {
        // 3 m1^2 = 5 m2^2 has no integer solutions: S1 is identically zero,
        // which satisfies any growth bound vacuously.
        off_ok = true;
        note = "S1(3,5) identically zero (vacuous)";
    } else {
        off_ok = off.slope <= 0.75;
        note = fmt("S1(3,5) slope %.3f (gate <= 0.75)", off.slope);
    }
    return {diag_ok && off_ok,
            fmt("S1 diagonal X-exponent %.3f (gate [0.9, 1.1]); %s", diag.slope,
                note.c_str())};
}

CaseResult c12_offdiagonal(const QExpansion& f_big) {
    std::vector<double> X_grid;
    for (int e = 14; e <= 18; ++e) X_grid.push_back(std::pow(2.0, e));
    std::vector<i64> Qs{11, 23, 47, 101};
    auto rep = offdiagonal_scaling_scan(f_big, X_grid, Qs, 1);
    double slope_q11 = 0.0;
    std::string slopes;
    for (const auto& s : rep.summaries) {
        if (s.degenerate) return {false, fmt("Q=%lld scan degenerate", (long long)s.Q)};
        if (s.Q == 11) slope_q11 = s.slope;
        slopes += fmt("%sQ=%lld:%.2f", slopes.empty() ? "" : " ", (long long)s.Q,
                      s.slope);
    }
    // normalized statistic at the largest X, across Q
    double stat_min = INFINITY, stat_max = 0.0;
    for (const auto& row : rep.rows) {
        if (row.X != X_grid.back()) continue;
        stat_min = std::min(stat_min, row.stat);
        stat_max = std::max(stat_max, row.stat);
    }
    bool fit_ok = slope_q11 >= 0.85 && slope_q11 <= 1.15;
    bool stat_ok = stat_min > 0.0 && stat_max / stat_min < 10.0;
    return {fit_ok && stat_ok,
            fmt("S2 X-exponent at Q=11: %.3f (gate [0.85, 1.15]; all fits %s); "
                "stat |S2|sqrt(Q)/X spread %.3f (gate < 10)",
                slope_q11, slopes.c_str(),
                stat_min > 0.0 ? stat_max / stat_min : INFINITY)};
}

CaseResult c13_subconvexity(const QExpansion& f, Complex eps) {
    const Complex s(0.5, 0.0);
    const double sp = 0.75; // s + (k-1)/2 at the central point
    std::vector<double> logQ, logL;
    i64 n_chars = 0;
    for (i64 Q = 101; Q <= 499; ++Q) {
        bool prime = Q >= 2;
        for (i64 p = 2; p * p <= Q; ++p)
            if (Q % p == 0) { prime = false; break; }
        if (!prime) continue;
        auto entries = sweep_primitive_twists(f, s, Q, eps, false);
        double pref = std::pow(std::sqrt(64.0) * (double)Q, 0.5) *
                      std::pow(TWO_PI, -sp) * std::tgamma(sp);
        double best = 0.0;
        for (const auto& e : entries)
            best = std::max(best, std::abs(e.result.value) / pref);
        n_chars += (i64)entries.size();
        logQ.push_back(std::log((double)Q));
        logL.push_back(std::log(best));
    }
    double expo = ls_slope(logQ, logL);
    return {expo < 0.5,
            fmt("max_chi |L(1/2,f,chi)| over %zu prime moduli (%lld primitive "
                "characters): fitted Q-exponent %.4f (gate < 0.5; compare "
                "0.40234 = 3/8 + (7/64)/4, no gate)",
                logQ.size(), (long long)n_chars, expo)};
}

CaseResult c14_triple_mellin() {
    // toy single-coefficient form
    QExpansion toy;
    toy.two_k = 3;
    toy.N = 4;
    toy.M = 6;
    toy.a = {0, 0, 0, 0, 0, 1, 0};
    toy.spec_string = "toy:a(5)=1";
    toy.rebuild_support();
    Complex s(2.5, 0), w(2.5, 0);
    auto trep = triple_mellin_inner_check(toy, s, w, 10, 3, 1, 10, 2.0, 40.0);
    if (trep.solution_count != 1 || trep.abs_diff >= 1e-6 + trep.contour_tail)
        return {false, fmt("toy collapse dev %.2e (tol 1e-6, tail %.2e)",
                           trep.abs_diff, trep.contour_tail)};

    auto f = make_eta8_cubed(200);
    double prev = INFINITY, final_diff = 0.0;
    bool monotone = true;
    for (double V : {10.0, 20.0, 40.0}) {
        auto rep = triple_mellin_inner_check(f, s, w, 11, 1, 1, 200, 2.0, V);
        if (rep.abs_diff > prev + 1e-12) monotone = false;
        prev = rep.abs_diff;
        final_diff = rep.abs_diff;
    }
    return {monotone && final_diff < 1e-4,
            fmt("toy dev %.2e (tol 1e-6); real-form dev %.2e after V-refinement "
                "10->40 (tol 1e-4, monotone %s)",
                trep.abs_diff, final_diff, monotone ? "yes" : "no")};
}

} // namespace

int main() {
    printf("acceptance checks: half-integer weight twisted L-function toolkit\n");

    run(1, 10.0, c01_theta_multiplier);
    run(2, 30.0, c02_gauss_sums);
    run(3, 120.0, c03_parseval);

    // shared large expansions (failures surface per-criterion via run())
    QExpansion f_L;
    Complex eps(0.0, 0.0);
    std::string setup_err;
    try {
        // Q <= 499 sweeps need 2 pi M y0 >= 30 at y0 = 1/(sqrt(64) * 499),
        // i.e. M >= ~19100, for the split-point tail certificate to exist
        f_L = make_eta8_cubed(21000);
        eps = fricke_eigenvalue(f_L).eps;
    } catch (const std::exception& e) {
        setup_err = fmt("shared setup failed: %s", e.what());
    }
    auto guard = [&](const std::function<CaseResult()>& fn) {
        return [&, fn]() -> CaseResult {
            if (!setup_err.empty()) return {false, setup_err};
            return fn();
        };
    };

    run(4, 60.0, guard([&] { return c04_lvalue_consistency(f_L, eps); }));
    run(5, 120.0, guard([&] { return c05_root_numbers(f_L, eps); }));
    run(6, 120.0, c06_m_function);
    run(7, 30.0, c07_barnes);
    run(8, 180.0, c08_theta_integral);
    run(9, 180.0, c09_selberg);
    run(10, 900.0, c10_kernel_pairing);

    QExpansion f_big;
    std::string big_err;
    try {
        f_big = make_eta8_cubed(524288);
    } catch (const std::exception& e) {
        big_err = fmt("coefficient expansion failed: %s", e.what());
    }
    run(11, 300.0, [&]() -> CaseResult {
        if (!big_err.empty()) return {false, big_err};
        return c11_diagonal(f_big);
    });
    run(12, 600.0, [&]() -> CaseResult {
        if (!big_err.empty()) return {false, big_err};
        return c12_offdiagonal(f_big);
    });
    run(13, 1800.0, guard([&] { return c13_subconvexity(f_L, eps); }));
    run(14, 600.0, c14_triple_mellin);

    if (g_failures == 0) {
        printf("all 14 acceptance checks passed\n");
        return 0;
    }
    printf("%d acceptance check(s) FAILED\n", g_failures);
    return 1;
}
