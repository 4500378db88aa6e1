#include "halfint/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace halfint {

i64 gcd_ll(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 mod_inverse(i64 a, i64 m) {
    if (m < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
    i64 r0 = m, r1 = ((a % m) + m) % m;
    i64 t0 = 0, t1 = 1;
    while (r1) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        i64 t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return ((t0 % m) + m) % m;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<i64> divisors(i64 n) {
    auto fac = factorize(n);
    std::vector<i64> out{1};
    for (auto [p, e] : fac) {
        size_t base = out.size();
        i64 pk = 1;
        for (int j = 1; j <= e; ++j) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int mobius(i64 n) {
    if (n < 1) throw std::invalid_argument("mobius: argument must be positive");
    auto fac = factorize(n);
    for (auto [p, e] : fac)
        if (e > 1) return 0;
    return (fac.size() % 2 == 0) ? 1 : -1;
}

i64 euler_phi(i64 n) {
    if (n < 1) throw std::invalid_argument("euler_phi: argument must be positive");
    i64 r = n;
    for (auto [p, e] : factorize(n)) r -= r / p;
    return r;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<char> sieve(n + 1, 1);
    for (i64 i = 2; i <= n; ++i) {
        if (sieve[i]) {
            out.push_back(i);
            for (i64 j = i * i; j <= n; j += i) sieve[j] = 0;
        }
    }
    return out;
}

// --------------------------------------------------------------------------

namespace {
// Legendre-style symbol (a/p) for odd prime power handling: computes the
// Jacobi symbol (a/n) for odd positive n via the binary reciprocity loop.
int jacobi_odd(i64 a, i64 n) {
    // n odd, n > 0
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}
} // namespace

int kronecker(i64 c, i64 d) {
    if (d == 0) return (c == 1 || c == -1) ? 1 : 0;
    int result = 1;
    if (d < 0) {
        if (c < 0) result = -result;
        d = -d;
    }
    // factor out 2s from the denominator: (c/2) term
    int two_count = 0;
    while (d % 2 == 0) { d /= 2; ++two_count; }
    if (two_count) {
        if (c % 2 == 0) return 0;
        i64 cm8 = ((c % 8) + 8) % 8;
        int c2 = (cm8 == 1 || cm8 == 7) ? 1 : -1;
        if (two_count % 2 == 1 && c2 == -1) result = -result;
    }
    result *= jacobi_odd(c, d);
    return result;
}

Complex eps_d(i64 d) {
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return Complex(1.0, 0.0);
    if (r == 3) return Complex(0.0, 1.0);
    throw std::invalid_argument("eps_d: d must be odd");
}

Complex cocycle_j(const IntegerMatrix2x2& g, Complex z) {
    if (g.det() != 1) throw std::invalid_argument("cocycle_j: determinant must be 1");
    if (g.c % 4 != 0) throw std::invalid_argument("cocycle_j: c must be divisible by 4");
    if (g.d % 2 == 0) throw std::invalid_argument("cocycle_j: d must be odd");
    Complex czd = Complex((double)g.c) * z + Complex((double)g.d);
    Complex unimod = (Complex(1.0, 0.0) / eps_d(g.d)) * Complex((double)kronecker(g.c, g.d));
    return unimod * std::sqrt(czd);
}

Complex cocycle_j_pow(const IntegerMatrix2x2& g, Complex z, int two_k) {
    if (two_k % 2 == 0)
        throw std::invalid_argument("cocycle_j_pow: two_k must be odd (half-integral weight)");
    if (g.det() != 1) throw std::invalid_argument("cocycle_j_pow: determinant must be 1");
    if (g.c % 4 != 0) throw std::invalid_argument("cocycle_j_pow: c must be divisible by 4");
    if (g.d % 2 == 0) throw std::invalid_argument("cocycle_j_pow: d must be odd");
    Complex czd = Complex((double)g.c) * z + Complex((double)g.d);
    // (eps_d^{-1})^{two_k}: eps_d is 1 or i, so this is exp(-i pi two_k / 2 * [d=3 mod 4])
    Complex unimod = std::pow(Complex(1.0, 0.0) / eps_d(g.d), two_k) *
                     Complex((double)kronecker(g.c, g.d)); // (c/d)^{odd} = (c/d)
    // principal power (cz+d)^{k}: exp(k log) with principal log; for z in H and
    // det 1 this never touches the branch cut (cz+d != negative real).
    Complex half_pow = std::exp(0.5 * (double)two_k * std::log(czd));
    return unimod * half_pow;
}

Complex jacobi_theta(Complex z, double tail_bound) {
    double y = z.imag();
    if (y <= 0.0) throw std::invalid_argument("jacobi_theta: Im z must be positive");
    // |e(n^2 z)| = exp(-2 pi n^2 y); choose n_max so the remaining tail
    // (bounded by a geometric series) is below tail_bound.
    double target = -std::log(tail_bound * 0.1);
    i64 n_max = (i64)std::ceil(std::sqrt(target / (TWO_PI * y))) + 2;
    Complex sum(1.0, 0.0);
    for (i64 n = 1; n <= n_max; ++n)
        sum += 2.0 * unit_e((double)n * (double)n * z.real()) *
               std::exp(-TWO_PI * (double)n * (double)n * y);
    return sum;
}

i64 ramanujan_restricted(i64 c, i64 w, i64 m) {
    if (c < 1 || w < 1)
        throw std::invalid_argument("ramanujan_restricted: c, w must be positive");
    i64 q = c * w;
    if (m < 0) m = -m; // c_q(m) = c_q(-m)
    i64 g = (m == 0) ? q : gcd_ll(q, m);
    i64 sum = 0;
    for (i64 d : divisors(g)) {
        i64 quotient = q / d;
        sum += d * mobius(quotient);
    }
    return sum;
}

i64 gamma0_index(i64 N) {
    if (N < 1) throw std::invalid_argument("gamma0_index: N must be positive");
    i64 idx = N;
    for (auto [p, e] : factorize(N)) idx += idx / p;
    return idx;
}

double volume(i64 N) {
    if (N < 1) throw std::invalid_argument("volume: N must be positive");
    return (PI / 3.0) * (double)gamma0_index(N);
}

} // namespace halfint
