#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "halfint/arith.hpp"
#include "halfint/chars.hpp"
#include "test_helpers.hpp"

using namespace halfint;

namespace {

// Brute-force conductor: the smallest d | Q with chi(n) = 1 for every
// n = 1 (mod d) coprime to Q. This is the standard factoring criterion and
// is independent of the library's CRT bookkeeping.
i64 brute_conductor(const DirichletCharacter& chi) {
    i64 Q = chi.modulus();
    for (i64 d : divisors(Q)) {
        bool ok = true;
        for (i64 n = 1; n <= Q && ok; ++n) {
            if (gcd_ll(n, Q) != 1) continue;
            if (n % d == 1 % d && std::abs(chi(n) - Complex(1, 0)) > 1e-9)
                ok = false;
        }
        if (ok) return d;
    }
    return Q;
}

}  // namespace

TEST_SUITE_BEGIN("chars");

TEST_CASE("group order, periodicity, multiplicativity, coprime support") {
    std::mt19937 rng(31);
    for (i64 Q = 1; Q <= 60; ++Q) {
        auto chars = enumerate_characters(Q);
        CHECK(chars.size() == (size_t)euler_phi(Q));
        REQUIRE(!chars.empty());
        CHECK(chars[0].is_principal());
        std::uniform_int_distribution<i64> nd(1, 6 * Q);
        for (const auto& chi : chars) {
            CHECK(chi.modulus() == Q);
            CHECK(std::abs(chi(1) - Complex(1, 0)) < 1e-12);
            for (int t = 0; t < 8; ++t) {
                i64 a = nd(rng), b = nd(rng);
                CHECK(std::abs(chi(a + Q) - chi(a)) < 1e-12);
                CHECK(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
                if (gcd_ll(a, Q) != 1)
                    CHECK(std::abs(chi(a)) < 1e-15);
                else
                    CHECK(std::abs(std::abs(chi(a)) - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("characters are pairwise distinct and closed under the product") {
    for (i64 Q : {8, 12, 15, 24, 36}) {
        auto chars = enumerate_characters(Q);
        // distinctness via value tables
        std::vector<std::vector<Complex>> tables;
        for (const auto& chi : chars) tables.push_back(chi.values());
        for (size_t i = 0; i < tables.size(); ++i)
            for (size_t j = i + 1; j < tables.size(); ++j) {
                double diff = 0;
                for (size_t n = 0; n < tables[i].size(); ++n)
                    diff = std::max(diff, std::abs(tables[i][n] - tables[j][n]));
                CHECK(diff > 1e-6);
            }
        // product of two characters is again in the list
        auto group = DirichletGroup::make(Q);
        const auto& a = chars[1 % chars.size()];
        const auto& b = chars[chars.size() - 1];
        auto prod = a * b;
        bool found = false;
        for (const auto& chi : chars) {
            double diff = 0;
            for (i64 n = 0; n < Q; ++n) diff = std::max(diff, std::abs(chi(n) - prod(n)));
            if (diff < 1e-10) found = true;
        }
        CHECK(found);
        CHECK(group->order() == (i64)chars.size());
    }
}

TEST_CASE("row and column orthogonality") {
    for (i64 Q : {5, 7, 12, 36}) {
        auto chars = enumerate_characters(Q);
        i64 phi = euler_phi(Q);
        for (size_t i = 0; i < chars.size(); ++i)
            for (size_t j = 0; j < chars.size(); ++j) {
                Complex s = 0;
                for (i64 n = 0; n < Q; ++n) s += chars[i](n) * std::conj(chars[j](n));
                double expected = (i == j) ? (double)phi : 0.0;
                CHECK(std::abs(s - Complex(expected, 0)) < 1e-10);
            }
        // column orthogonality at a few residue pairs
        for (i64 n : {1LL, 2LL, 5LL})
            for (i64 m : {1LL, 3LL}) {
                if (gcd_ll(n, Q) != 1 || gcd_ll(m, Q) != 1) continue;
                Complex s = 0;
                for (const auto& chi : chars) s += chi(n) * std::conj(chi(m));
                double expected = (((n - m) % Q + Q) % Q == 0) ? (double)phi : 0.0;
                CHECK(std::abs(s - Complex(expected, 0)) < 1e-10);
            }
    }
}

TEST_CASE("character order, conjugate and reality") {
    for (i64 Q : {5, 8, 12, 21, 36}) {
        for (const auto& chi : enumerate_characters(Q)) {
            int ord = chi.order();
            CHECK(ord >= 1);
            CHECK(euler_phi(Q) % ord == 0);
            // chi^ord is principal: check on all residues
            for (i64 n = 1; n <= Q; ++n) {
                if (gcd_ll(n, Q) != 1) continue;
                Complex p = std::pow(chi(n), ord);
                CHECK(std::abs(p - Complex(1, 0)) < 1e-10);
            }
            CHECK(chi.is_real() == (ord <= 2));
            auto bar = chi.conjugate();
            for (i64 n = 0; n < Q; ++n)
                CHECK(std::abs(bar(n) - std::conj(chi(n))) < 1e-12);
        }
    }
}

TEST_CASE("group object indexing agrees with enumeration") {
    for (i64 Q : {7, 12, 40}) {
        auto group = DirichletGroup::make(Q);
        auto chars = enumerate_characters(Q);
        REQUIRE(group->order() == (i64)chars.size());
        for (i64 i = 0; i < group->order(); ++i) {
            auto chi = group->character(i);
            CHECK(chi.index() == i);
            for (i64 n = 0; n < Q; ++n)
                CHECK(std::abs(chi(n) - chars[i](n)) < 1e-14);
        }
    }
}

TEST_CASE("conductor and primitivity against the brute-force criterion") {
    for (i64 Q = 1; Q <= 40; ++Q) {
        for (const auto& chi : enumerate_characters(Q)) {
            auto [cond, prim] = conductor_and_primitivity(chi);
            CHECK(cond == brute_conductor(chi));
            CHECK(prim == (cond == Q));
        }
    }
    // prime modulus: every non-principal character is primitive
    for (i64 p : {5, 7, 11, 13}) {
        auto prim = primitive_characters(p);
        CHECK(prim.size() == (size_t)(p - 2));
        for (const auto& chi : prim) CHECK(!chi.is_principal());
    }
    // Q = 12 conductors are {1, 3, 4, 12}
    std::vector<i64> conds;
    for (const auto& chi : enumerate_characters(12))
        conds.push_back(conductor_and_primitivity(chi).first);
    std::sort(conds.begin(), conds.end());
    CHECK(conds == std::vector<i64>{1, 3, 4, 12});
}

TEST_CASE("gauss sums: modulus and twisted-translate identity for primitive characters") {
    for (i64 Q : {5, 7, 12, 16, 36}) {
        for (const auto& chi : primitive_characters(Q)) {
            Complex g1 = gauss_sum(1, chi);
            CHECK(std::abs(std::abs(g1) - std::sqrt((double)Q)) < 1e-11);
            for (i64 n = 0; n < Q; ++n) {
                Complex gn = gauss_sum(n, chi);
                CHECK(std::abs(gn - std::conj(chi(n)) * g1) < 1e-11);
            }
        }
    }
    // Direct-definition oracle at Q = 5 for one non-principal character.
    auto chars5 = enumerate_characters(5);
    const auto& chi = chars5[1];
    Complex direct = 0;
    for (i64 n = 0; n < 5; ++n) direct += chi(n) * unit_e((double)n / 5.0);
    CHECK(std::abs(gauss_sum(1, chi) - direct) < 1e-13);
}

TEST_CASE("quadratic character attached to a prime ell") {
    auto neb12 = nebentypus_ell(12);
    CHECK(neb12(1) == 1);
    CHECK(neb12(5) == -1);
    CHECK(neb12(7) == -1);
    CHECK(neb12(11) == 1);
    CHECK(neb12(13) == 1);
    auto neb3 = nebentypus_ell(3);
    CHECK(neb3(1) == 1);
    CHECK(neb3(5) == -1);
    CHECK(neb3(7) == -1);
    CHECK(neb3(11) == 1);
    // multiplicative in odd d
    std::mt19937 rng(5);
    std::uniform_int_distribution<i64> dd(0, 200);
    for (int t = 0; t < 100; ++t) {
        i64 d1 = 2 * dd(rng) + 1, d2 = 2 * dd(rng) + 1;
        CHECK(neb12(d1 * d2) == neb12(d1) * neb12(d2));
    }
}

TEST_SUITE_END();
