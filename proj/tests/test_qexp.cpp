#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "halfint/arith.hpp"
#include "halfint/qexp.hpp"
#include "test_helpers.hpp"

using namespace halfint;

namespace {

Complex brute_eval(const QExpansion& f, Complex z) {
    Complex s = 0;
    for (const auto& [n, an] : f.support)
        s += Complex((double)an) * unit_e((double)n * z.real()) *
             std::exp(-TWO_PI * (double)n * z.imag());
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("qexp");

TEST_CASE("eta quotient spec parsing and rendering") {
    auto s = EtaQuotientSpec::parse("eta(8z)^3");
    REQUIRE(s.factors.size() == 1);
    CHECK(s.factors[0].m == 8);
    CHECK(s.factors[0].exponent == 3);
    CHECK(s.total_two_k() == 3);
    CHECK(EtaQuotientSpec::parse(s.to_string()).to_string() == s.to_string());

    auto q = EtaQuotientSpec::parse(" eta(2z)^5*eta(4z)^-2 ");
    REQUIRE(q.factors.size() == 2);
    CHECK(q.factors[0].m == 2);
    CHECK(q.factors[0].exponent == 5);
    CHECK(q.factors[1].m == 4);
    CHECK(q.factors[1].exponent == -2);
    CHECK(q.total_two_k() == 3);

    auto one = EtaQuotientSpec::parse("eta(24z)");
    REQUIRE(one.factors.size() == 1);
    CHECK(one.factors[0].exponent == 1);
    CHECK(one.total_two_k() == 1);
}

TEST_CASE("non-integral or negative leading power is rejected") {
    // eta(8z) alone has leading q-power 8/24 = 1/3.
    CHECK_THROWS_AS(
        expand_eta_quotient(EtaQuotientSpec::parse("eta(8z)"), 50),
        std::domain_error);
    // eta(z)^-1 has leading q-power -1/24.
    CHECK_THROWS_AS(
        expand_eta_quotient(EtaQuotientSpec::parse("eta(z)^-1"), 50),
        std::domain_error);
}

TEST_CASE("eta(8z)^3 coefficients: odd-square support with a(m^2) = (-4|m) m") {
    auto f = make_eta8_cubed(5000);
    CHECK(f.two_k == 3);
    CHECK(f.N == 64);
    CHECK(f.k() == doctest::Approx(1.5));
    CHECK(f.coeff(0) == 0);
    CHECK(f.coeff(1) == 1);
    CHECK(f.coeff(9) == -3);
    CHECK(f.coeff(25) == 5);
    CHECK(f.coeff(49) == -7);
    CHECK(f.coeff(81) == 9);
    // support is exactly the odd squares, with the classical closed form
    for (const auto& [n, an] : f.support) {
        i64 m = (i64)std::llround(std::sqrt((double)n));
        CHECK(m * m == n);
        CHECK(m % 2 == 1);
        CHECK(an == kronecker(-4, m) * m);
    }
    // and every odd square up to M appears
    i64 count = 0;
    for (i64 m = 1; m * m <= f.M; m += 2) ++count;
    CHECK((i64)f.support.size() == count);
}

TEST_CASE("eta(24z) coefficients: pentagonal exponents (6k+1)^2 with sign (-1)^k") {
    auto f = make_eta24(3000);
    CHECK(f.two_k == 1);
    CHECK(f.N == 576);
    // Build the same expansion directly from Euler's pentagonal theorem.
    std::vector<long long> direct(f.M + 1, 0);
    for (i64 k = -40; k <= 40; ++k) {
        i64 e = (6 * k + 1) * (6 * k + 1);
        if (e >= 0 && e <= f.M) direct[e] += (k % 2 == 0) ? 1 : -1;
    }
    REQUIRE((i64)f.a.size() == f.M + 1);
    for (i64 n = 0; n <= f.M; ++n) CHECK(f.a[n] == direct[n]);
    for (const auto& [n, an] : f.support) {
        CHECK(n % 24 == 1);
        CHECK(std::abs(an) == 1);
    }
}

TEST_CASE("expansion engine agrees with an in-test triple convolution") {
    const i64 M = 1500;
    auto base = make_eta24(M);
    auto cubed = expand_eta_quotient(EtaQuotientSpec::parse("eta(24z)^3"), M);
    CHECK(cubed.two_k == 3);
    std::vector<long long> c2(M + 1, 0), c3(M + 1, 0);
    for (const auto& [n1, a1] : base.support)
        for (const auto& [n2, a2] : base.support) {
            if (n1 + n2 > M) break;
            c2[n1 + n2] += a1 * a2;
        }
    for (i64 n2 = 0; n2 <= M; ++n2) {
        if (c2[n2] == 0) continue;
        for (const auto& [n1, a1] : base.support) {
            if (n1 + n2 > M) break;
            c3[n1 + n2] += a1 * c2[n2];
        }
    }
    for (i64 n = 0; n <= M; ++n) CHECK(cubed.a[n] == c3[n]);
}

TEST_CASE("normalized coefficients A(n) = a(n) n^{-(k-1)/2}") {
    auto f = make_eta8_cubed(100);
    auto A = normalized_coeffs(f);
    REQUIRE((i64)A.size() == f.M + 1);
    CHECK(A[1] == doctest::Approx(1.0));
    CHECK(A[9] == doctest::Approx(-std::sqrt(3.0)));
    CHECK(A[25] == doctest::Approx(std::sqrt(5.0)));
    CHECK(A[2] == 0.0);
}

TEST_CASE("coefficient envelope is tight on the closed-form support") {
    auto f = make_eta8_cubed(4000);
    // |a(m^2)| = m = (m^2)^{1/2}: envelope at exponent 1/2 is exactly 1.
    CHECK(coefficient_envelope(f, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    // exponent 0.6 still peaks at n = 1
    CHECK(coefficient_envelope(f, 0.6) == doctest::Approx(1.0).epsilon(1e-12));
    // exponent 0.4: max of m^{0.2} at the largest odd square below M
    i64 mmax = 1;
    while ((mmax + 2) * (mmax + 2) <= f.M) mmax += 2;
    CHECK(coefficient_envelope(f, 0.4) ==
          doctest::Approx(std::pow((double)mmax, 0.2)).epsilon(1e-12));
}

TEST_CASE("evaluation with certified tail against long truncations") {
    auto f300 = make_eta8_cubed(300);
    auto f6000 = make_eta8_cubed(6000);
    for (Complex z : {Complex(0.3, 0.25), Complex(-0.41, 0.11), Complex(0.0, 1.0)}) {
        auto r = evaluate_with_tail(f300, z, 1e-12);
        Complex truth = brute_eval(f6000, z);
        CHECK(std::abs(r.value - truth) <= r.tail_bound + 1e-12);
        CHECK(std::abs(evaluate(f6000, z) - truth) < 5e-12);
    }
    // low y needs more coefficients than M = 300 supplies: certificate must refuse
    CHECK_THROWS_AS(evaluate_with_tail(f300, Complex(0.0, 1e-4), 1e-12),
                    precision_error);
}

TEST_CASE("fricke eigenvalue probes") {
    auto f = make_eta8_cubed(2500);
    auto fr = fricke_eigenvalue(f);
    CHECK(std::abs(fr.eps - Complex(0, 1)) < 1e-8);
    CHECK(fr.residual < 1e-8);
    // ratio at the fixed point is e^{-i pi k} for any function
    CHECK(std::abs(fr.ratio_fixed_point - std::exp(Complex(0, -PI * f.k()))) <
          1e-8);

    auto g = make_eta24(4000);
    auto gr = fricke_eigenvalue(g);
    CHECK(std::abs(gr.eps - Complex(0, -1)) < 1e-8);
    CHECK(gr.residual < 1e-8);
    CHECK(std::abs(gr.ratio_fixed_point - std::exp(Complex(0, -PI * g.k()))) <
          1e-8);
}

TEST_CASE("empirical nebentypus") {
    auto f = make_eta8_cubed(2500);
    for (i64 d : {3, 5, 7, 11, 13})
        CHECK(std::abs(empirical_nebentypus(f, d) - Complex(1, 0)) < 1e-8);
    auto g = make_eta24(6000);
    for (i64 d : {5, 7, 11, 13, 25}) {
        double expect = (double)kronecker(12, d);
        CHECK(std::abs(empirical_nebentypus(g, d) - Complex(expect, 0)) < 1e-6);
    }
}

TEST_CASE("sup-norm grid estimate sanity") {
    auto f = make_eta8_cubed(1500);
    auto r = sup_norm_estimate(f, 128, 80, 2);
    CHECK(r.value > 0.0);
    CHECK(std::isfinite(r.value));
    CHECK(r.argmax.imag() > 0.0);
    CHECK(r.y_levels > 0);
    // the estimate must dominate |f| y^{k/2} at arbitrary sample points
    std::mt19937 rng(4);
    for (int t = 0; t < 10; ++t) {
        Complex z = testutil::random_z(rng, 0.05, 1.5);
        double v = std::abs(evaluate(f, z)) * std::pow(z.imag(), f.k() / 2.0);
        CHECK(v <= r.value * 1.02 + 1e-12);
    }
}

TEST_CASE("coefficient cache round-trip is exact and tamper-evident") {
    auto f = make_eta8_cubed(777);
    std::string path = "/tmp/halfint_qexp_cache_test.csv";
    write_coefficient_cache(f, path);
    auto g = read_coefficient_cache(path);
    CHECK(g.two_k == f.two_k);
    CHECK(g.N == f.N);
    CHECK(g.M == f.M);
    CHECK(g.spec_string == f.spec_string);
    REQUIRE(g.a.size() == f.a.size());
    CHECK(g.a == f.a);
    CHECK(g.support == f.support);
    // byte-identical rewrite (determinism of the writer)
    std::string path2 = "/tmp/halfint_qexp_cache_test2.csv";
    write_coefficient_cache(g, path2);
    std::ifstream in1(path, std::ios::binary), in2(path2, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(in1)),
                   std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(in2)),
                   std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(!s1.empty());
    // tampering with the payload must be detected
    std::string tampered = s1;
    auto pos = tampered.rfind('1');
    REQUIRE(pos != std::string::npos);
    tampered[pos] = '2';
    std::ofstream out(path2, std::ios::binary | std::ios::trunc);
    out << tampered;
    out.close();
    CHECK_THROWS(read_coefficient_cache(path2));
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_SUITE_END();
