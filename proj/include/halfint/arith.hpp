#pragma once
// Exact integer and elementary multiplicative machinery: the extended
// Kronecker symbol, the eps_d root of unity, the half-integral weight cocycle
// j(gamma, z), restricted Ramanujan sums, and the Gamma_0(N) volume formula.
#include <cstdint>
#include <vector>

#include "halfint/numeric.hpp"

namespace halfint {

using i64 = long long;

// ---------------------------------------------------------------------------
// Elementary number theory helpers (exact integer arithmetic throughout).

i64 gcd_ll(i64 a, i64 b);
// Modular inverse of a mod m (m >= 1, gcd(a,m) = 1); result in [0, m).
i64 mod_inverse(i64 a, i64 m);
// Prime factorization by trial division; returns (p, exponent) pairs, p ascending.
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> divisors(i64 n);
int mobius(i64 n);
i64 euler_phi(i64 n);
std::vector<i64> primes_up_to(i64 n);

// ---------------------------------------------------------------------------
// Kronecker symbol, extended to all integer pairs (GMP/Koblitz convention):
//   (c/0) = 1 iff c = +-1 else 0;  (c/-1) = -1 iff c < 0;
//   (c/2) = 0 for even c, (-1)^((c^2-1)/8) for odd c;
//   multiplicative in the denominator over its factorization with
//   (c/d) = (c/-1)^[d<0] * prod over prime factors of |d|.
// This is the standard extension compatible with the half-integral cocycle;
// the theta-multiplier test below pins the convention.
int kronecker(i64 c, i64 d);

// eps_d: 1 when d = 1 mod 4, i when d = 3 mod 4. Rejects even d.
Complex eps_d(i64 d);

// ---------------------------------------------------------------------------
// 2x2 integral matrices acting on the upper half plane.
struct IntegerMatrix2x2 {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return a * d - b * c; }
    bool in_gamma0(i64 N) const { return det() == 1 && c % N == 0; }
    IntegerMatrix2x2 operator*(const IntegerMatrix2x2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Complex act(Complex z) const {
        return (Complex((double)a) * z + Complex((double)b)) /
               (Complex((double)c) * z + Complex((double)d));
    }
};

// Half-integral weight cocycle j(gamma, z) = eps_d^{-1} (c/d) (cz+d)^{1/2},
// principal square root. Requires gamma in Gamma_0(4) with odd d, det 1.
Complex cocycle_j(const IntegerMatrix2x2& gamma, Complex z);

// j(gamma, z)^{two_k} for odd two_k (weight k = two_k/2): equals
// eps_d^{-two_k} (c/d) (cz+d)^{two_k/2} with the principal power of (cz+d).
// Avoids any branch ambiguity of powering the square root.
Complex cocycle_j_pow(const IntegerMatrix2x2& gamma, Complex z, int two_k);

// Jacobi theta Theta(z) = sum_{n in Z} e(n^2 z), truncated so the dropped
// tail is below tail_bound; used by the multiplier tests.
Complex jacobi_theta(Complex z, double tail_bound = 1e-14);

// ---------------------------------------------------------------------------
// Restricted Ramanujan sum: sum over d mod cw, gcd(d, cw) = 1 of e(-m d/(cw)),
// evaluated exactly as an integer via the Moebius/gcd closed form
//   c_q(m) = sum_{d | gcd(q, m)} d * mu(q/d),   q = c*w.
i64 ramanujan_restricted(i64 c, i64 w, i64 m);

// Hyperbolic volume of Gamma_0(N) \ H: (pi/3) N prod_{p|N} (1 + 1/p).
double volume(i64 N);

// Index [SL2(Z) : Gamma_0(N)] = N prod_{p|N} (1 + 1/p) as an exact integer.
i64 gamma0_index(i64 N);

} // namespace halfint
