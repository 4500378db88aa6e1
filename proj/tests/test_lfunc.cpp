#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "halfint/chars.hpp"
#include "halfint/cutoff.hpp"
#include "halfint/lfunc.hpp"
#include "halfint/qexp.hpp"
#include "halfint/special.hpp"

using namespace halfint;

namespace {

// Direct Dirichlet series oracle for Re s large:
//   L*(s, f, u/Q) = (sqrt(N) Q)^s (2 pi)^{-s'} Gamma(s') sum a(n) e(nu/Q) n^{-s'}
// with s' = s + (k-1)/2. Entirely independent of the split-integral code path.
Complex completed_L_series(const QExpansion& f, Complex s, i64 u, i64 Q) {
    Complex sp = s + Complex(0.5 * (f.k() - 1.0), 0);
    Complex sum = 0;
    for (const auto& [n, an] : f.support)
        sum += (double)an * unit_e((double)(u * (n % Q)) / (double)Q) *
               std::exp(-sp * std::log((double)n));
    Complex pref = std::exp(s * std::log(std::sqrt((double)f.N) * (double)Q)) *
                   std::exp(-sp * std::log(TWO_PI)) * gamma_c(sp);
    return pref * sum;
}

const QExpansion& eta8(i64 M = 4000) {
    static QExpansion f = make_eta8_cubed(M);
    return f;
}

Complex eta8_eps() {
    static Complex eps = fricke_eigenvalue(eta8()).eps;
    return eps;
}

}  // namespace

TEST_SUITE_BEGIN("lfunc");

TEST_CASE("default split point") {
    const auto& f = eta8();
    CHECK(default_split_point(f, 1) == doctest::Approx(1.0 / 8.0));
    CHECK(default_split_point(f, 11) == doctest::Approx(1.0 / 88.0));
}

TEST_CASE("completed additive twist matches the direct series at Re s = 3") {
    const auto& f = eta8();
    Complex eps = eta8_eps();
    Complex s(3, 0);
    struct Probe { i64 u, Q; };
    for (Probe p : {Probe{0, 1}, Probe{1, 5}, Probe{2, 5}, Probe{3, 7}}) {
        double y0 = default_split_point(f, p.Q);
        auto r = completed_L_additive(f, s, p.u, p.Q, y0, eps);
        Complex truth = completed_L_series(f, s, p.u, p.Q);
        CHECK(std::abs(r.value - truth) < 1e-8 * (1.0 + std::abs(truth)));
        CHECK(r.truncation_error < 1e-8);
    }
}

TEST_CASE("split-point independence") {
    const auto& f = eta8();
    Complex eps = eta8_eps();
    for (Complex s : {Complex(0.5, 0), Complex(0.5, 1.3), Complex(1.2, -0.4)}) {
        i64 u = 1, Q = 5;
        double y0 = default_split_point(f, Q);
        Complex v1 = completed_L_additive(f, s, u, Q, y0, eps).value;
        Complex v2 = completed_L_additive(f, s, u, Q, 2.0 * y0, eps).value;
        Complex v3 = completed_L_additive(f, s, u, Q, 0.6 * y0, eps).value;
        CHECK(std::abs(v1 - v2) < 1e-9 * (1.0 + std::abs(v1)));
        CHECK(std::abs(v1 - v3) < 1e-9 * (1.0 + std::abs(v1)));
    }
}

TEST_CASE("additive root numbers have modulus 1 on the critical line") {
    const auto& f = eta8();
    Complex eps = eta8_eps();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> td(-2.0, 2.0);
    for (i64 Q : {1, 5, 7, 11}) {
        for (int trial = 0; trial < 3; ++trial) {
            i64 u = 0;
            if (Q > 1) {
                std::uniform_int_distribution<i64> ud(1, Q - 1);
                do { u = ud(rng); } while (gcd_ll(u, Q) != 1);
            }
            Complex s(0.5, td(rng));
            Complex ratio = additive_root_number(f, s, u, Q, eps);
            CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("multiplicative twist: additive average and direct series") {
    const auto& f = eta8();
    Complex eps = eta8_eps();
    Complex s(3, 0);
    for (i64 Q : {5, 7}) {
        auto prim = primitive_characters(Q);
        REQUIRE(!prim.empty());
        for (const auto& chi : {prim.front(), prim.back()}) {
            auto r = completed_L_multiplicative(f, s, chi, eps);
            // oracle: g(1, chibar)^{-1} sum_u chibar(u) L*_series(s, u/Q)
            auto chibar = chi.conjugate();
            Complex acc = 0;
            for (i64 u = 1; u < Q; ++u)
                acc += chibar(u) * completed_L_series(f, s, u, Q);
            acc /= gauss_sum(1, chibar);
            CHECK(std::abs(r.value - acc) < 1e-8 * (1.0 + std::abs(acc)));
        }
    }
}

TEST_CASE("multiplicative root numbers have modulus 1 on the critical line") {
    const auto& f = eta8();
    Complex eps = eta8_eps();
    for (i64 Q : {5, 11}) {
        auto prim = primitive_characters(Q);
        for (size_t i : {(size_t)0, prim.size() - 1}) {
            auto r = completed_L_multiplicative(f, Complex(0.5, 0.7), prim[i],
                                                eps, true);
            REQUIRE(r.empirical_root_number.has_value());
            CHECK(std::abs(std::abs(*r.empirical_root_number) - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("central value and conjugation symmetry") {
    const auto& f = eta8();
    Complex eps = eta8_eps();
    auto prim = primitive_characters(7);
    for (const auto& chi : prim) {
        Complex v = central_value(f, chi, eps);
        CHECK(std::isfinite(v.real()));
        CHECK(std::isfinite(v.imag()));
        // L(1/2, chibar) = conj(L(1/2, chi)) for real coefficients a(n)
        Complex vbar = central_value(f, chi.conjugate(), eps);
        CHECK(std::abs(vbar - std::conj(v)) < 1e-7 * (1.0 + std::abs(v)));
    }
}

TEST_CASE("sweep shares tables but reproduces the single-twist values") {
    const auto& f = eta8();
    Complex eps = eta8_eps();
    Complex s(0.5, 0);
    i64 Q = 11;
    auto sweep = sweep_primitive_twists(f, s, Q, eps, false);
    auto prim = primitive_characters(Q);
    REQUIRE(sweep.size() == prim.size());
    for (size_t i = 0; i < sweep.size(); ++i) {
        CHECK(sweep[i].chi_index == prim[i].index());
        auto single = completed_L_multiplicative(f, s, prim[i], eps);
        CHECK(std::abs(sweep[i].result.value - single.value) <
              1e-10 * (1.0 + std::abs(single.value)));
    }
}

TEST_CASE("smoothed coefficient sums against direct loops") {
    const auto& f = eta8();
    SmoothCutoff H;
    auto chars = enumerate_characters(5);
    const auto& chi = chars[1];
    double x = 40.0;
    auto A = normalized_coeffs(f);
    Complex direct = 0;
    for (i64 m = 1; m <= f.M; ++m) {
        double h = H((double)m / x);
        if (h != 0.0) direct += A[m] * chi(m) * h;
    }
    CHECK(std::abs(smoothed_coeff_sum(f, chi, H, x) - direct) < 1e-12);

    // Gauss-weighted version
    auto prim = primitive_characters(5);
    const auto& psi = prim[0];
    Complex direct_g = 0;
    for (i64 m = 1; m <= f.M; ++m) {
        double h = H((double)m / x);
        if (h != 0.0) direct_g += A[m] * gauss_sum(m, psi) * h;
    }
    direct_g /= gauss_sum(1, chi.conjugate());
    CHECK(std::abs(smoothed_coeff_sum_gauss(f, psi, chi, H, x) - direct_g) <
          1e-12);
}

TEST_CASE("form nebentypus probe agrees with the closed forms") {
    const auto& f = eta8();
    for (i64 d : {3, 5, 9})
        CHECK(std::abs(form_nebentypus(f, d) - Complex(1, 0)) < 1e-7);
    auto g = make_eta24(6000);
    CHECK(std::abs(form_nebentypus(g, 5) - Complex(-1, 0)) < 1e-6);
    CHECK(std::abs(form_nebentypus(g, 11) - Complex(1, 0)) < 1e-6);
}

TEST_CASE("precondition violations are rejected") {
    const auto& f = eta8();
    Complex eps = eta8_eps();
    double y0 = default_split_point(f, 6);
    // gcd(Q, N) must be 1: N = 64, Q = 6 shares 2
    CHECK_THROWS_AS(completed_L_additive(f, Complex(3, 0), 1, 6, y0, eps),
                    std::invalid_argument);
    // gcd(u, Q) must be 1
    CHECK_THROWS_AS(
        completed_L_additive(f, Complex(3, 0), 3, 9, default_split_point(f, 9), eps),
        std::invalid_argument);
    // multiplicative twists require primitive chi: principal mod 5 is not
    auto chars = enumerate_characters(5);
    CHECK_THROWS_AS(completed_L_multiplicative(f, Complex(3, 0), chars[0], eps),
                    std::invalid_argument);
}

TEST_SUITE_END();
