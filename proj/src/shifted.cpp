#include "halfint/shifted.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "halfint/arith.hpp"
#include "halfint/quadrature.hpp"
#include "halfint/special.hpp"

namespace halfint {

void ShiftedSeriesParams::validate() const {
    if (h < 1) throw std::invalid_argument("ShiftedSeriesParams: h must be >= 1");
    if (delta < 0.0) throw std::invalid_argument("ShiftedSeriesParams: delta must be >= 0");
    if (Q < 1 || ell_1 < 1 || ell_2 < 1)
        throw std::invalid_argument("ShiftedSeriesParams: Q, ell_1, ell_2 must be positive");
    if (s.real() <= 1.0)
        throw std::invalid_argument("ShiftedSeriesParams: D-region needs Re(s) > 1");
}

SeriesValue D_series_delta(const QExpansion& f, const QExpansion& g, Complex s,
                           i64 h, double delta, double tail_tol) {
    if (h < 1) throw std::invalid_argument("D_series: h must be >= 1");
    if (delta < 0.0) throw std::invalid_argument("D_series: delta must be >= 0");
    if (f.two_k != g.two_k)
        throw std::invalid_argument("D_series: forms must share a weight");
    double k = f.k();
    double sigma = s.real();
    if (sigma <= 1.0 + 1e-9)
        throw std::invalid_argument("D_series: requires Re(s) > 1");

    i64 n_max = std::min(f.M - h, g.M);
    if (n_max < 1) throw std::invalid_argument("D_series: coefficient range must cover h+1");

    Complex exponent = s + (k - 1.0);
    Complex acc(0.0, 0.0);
    for (const auto& [n, bn] : g.support) {
        if (n < 1) continue;
        if (n > n_max) break;
        i64 an = f.coeff(n + h);
        if (an == 0) continue;
        double den_base = (double)n + 0.5 * (double)h * delta;
        acc += (double)an * (double)bn * std::exp(-exponent * std::log(den_base));
    }

    // tail over n > n_max from |a(n)| <= C n^q, q = (k-1)/2 + 1/4 + eps:
    // summand <= C_f C_g (1 + h/n)^q n^{1/2 + 2 eps - sigma}
    double q = 0.5 * (k - 1.0) + 0.26;
    double Cf = coefficient_envelope(f, q);
    double Cg = coefficient_envelope(g, q);
    double tail;
    if (Cf == 0.0 || Cg == 0.0) {
        tail = 0.0;
    } else if (sigma > 1.52 + 0.01) {
        double expo = 0.52 - sigma; // 2q - (sigma + k - 1)
        double nm = (double)n_max;
        double ratio = std::pow(1.0 + (double)h / nm, q);
        tail = Cf * Cg * ratio *
               (std::pow(nm, expo) + std::pow(nm, expo + 1.0) / (sigma - 1.52));
    } else {
        tail = INFINITY;
    }
    if (!(tail <= tail_tol))
        throw precision_error("D_series: tail certificate exceeds tolerance");
    return {acc, tail};
}

SeriesValue D_series(const QExpansion& f, const QExpansion& g, Complex s, i64 h,
                     double tail_tol) {
    return D_series_delta(f, g, s, h, 0.0, tail_tol);
}

std::vector<ZSolution> z_solutions(const QExpansion& f, i64 Q, i64 ell_1,
                                   i64 ell_2, i64 m2_cap, i64 h_cap) {
    if (Q < 1 || ell_1 < 1 || ell_2 < 1)
        throw std::invalid_argument("z_solutions: Q, ell_1, ell_2 must be positive");
    std::vector<ZSolution> out;
    for (const auto& [m1, a1] : f.support) {
        if (m1 < 1) continue;
        for (const auto& [m2, a2] : f.support) {
            if (m2 < 1) continue;
            if (m2 > m2_cap) break;
            i64 diff = ell_1 * m1 - ell_2 * m2;
            if (diff <= 0 || diff % Q != 0) continue;
            i64 h = diff / Q;
            if (h > h_cap) continue;
            out.push_back({m1, m2, h});
        }
    }
    return out;
}

namespace {

// Shared tail certificate for the truncated (m2, h) double sums.  With the
// measured envelope |coef(m)| <= C m^{q} the term modulus is bounded by
//   C^2 ell_1^{-q} m2^q (ell_2 m2)^{q - sigma_m} (1+t)^{c_t + q} (hQ)^{-omega_h},
// t = hQ/(ell_2 m2).  Piece A integrates m2 > m2_cap over all h; piece B keeps
// m2 <= m2_cap and integrates h > h_cap (where hQ >= ell_2 m2_cap by cap choice).
double z_tail_certificate(const QExpansion& f, double C, double q, double sigma_m,
                          double omega_h, double c_t, i64 Q, i64 ell_1, i64 ell_2,
                          i64 m2_cap, i64 h_cap) {
    if (C == 0.0) return 0.0;
    double c = c_t + q;
    if (!(omega_h - c > 1.0 + 1e-6) || !(sigma_m - 2.0 * q > 1.0 + 1e-6))
        return INFINITY;

    // B_h = sum_{h>=1} (hQ)^{-omega_h} (1+hQ)^{c}; terms ~ h^{c-omega_h}
    double Bh = 0.0;
    double beta = omega_h - c;
    i64 h = 1;
    for (; h <= 200000; ++h) {
        double term = std::pow((double)h * (double)Q, -omega_h) *
                      std::pow(1.0 + (double)h * (double)Q, c);
        Bh += term;
        if (term < 1e-16 * Bh && h > 8) break;
    }
    // integral remainder: terms <= (Qh)^{-beta} Q^{c} ... bounded crudely by
    // continuing the last computed term geometrically via the power decay
    Bh += std::pow((double)h * (double)Q, -omega_h) *
          std::pow(1.0 + (double)h * (double)Q, c) * (double)h / (beta - 1.0);

    double pref = C * C * std::pow((double)ell_1, -q);
    double cap = (double)m2_cap;

    // piece A: m2 > m2_cap, every h >= 1; (1+t)^c <= (1+hQ)^c since m2 >= 1
    double mexp = 2.0 * q - sigma_m;
    double pieceA = pref * Bh * std::pow((double)ell_2, q - sigma_m) *
                    (std::pow(cap, mexp) + std::pow(cap, mexp + 1.0) / (sigma_m - 2.0 * q - 1.0));

    // piece B: m2 <= m2_cap, h > h_cap; (1+t)^c <= (2hQ/(ell_2 m2))^c
    double msum = 0.0;
    for (const auto& [m2, a2] : f.support) {
        if (m2 < 1) continue;
        if (m2 > m2_cap) break;
        msum += std::pow((double)m2, q) *
                std::pow((double)ell_2 * (double)m2, q - sigma_m - c);
    }
    double H = (double)h_cap;
    double htail = std::pow((double)Q, c - omega_h) *
                   (std::pow(H, c - omega_h) + std::pow(H, c - omega_h + 1.0) / (beta - 1.0));
    double pieceB = pref * std::pow(2.0, c) * msum * htail;

    return pieceA + pieceB;
}

void z_default_caps(const QExpansion& f, i64 Q, i64 ell_1, i64 ell_2, i64& m2_cap,
                    i64& h_cap) {
    // complete for m2 <= m2_cap, h <= h_cap: needs ell_2 m2_cap + h_cap Q <= ell_1 f.M
    m2_cap = std::min(f.M, ell_1 * f.M / (2 * ell_2));
    h_cap = std::max((i64)1, ell_1 * f.M / (2 * Q));
    if (m2_cap < 1) throw std::invalid_argument("Z_Q: coefficient budget too small");
}

} // namespace

ZQResult Z_Q_bruteforce(const QExpansion& f, Complex s, Complex w, i64 Q,
                        i64 ell_1, i64 ell_2) {
    if (s.real() <= 1.0 || w.real() <= 1.0)
        throw std::invalid_argument("Z_Q_bruteforce: requires Re(s), Re(w) > 1");
    double k = f.k();
    i64 m2_cap, h_cap;
    z_default_caps(f, Q, ell_1, ell_2, m2_cap, h_cap);
    std::vector<ZSolution> sols = z_solutions(f, Q, ell_1, ell_2, m2_cap, h_cap);

    double km1 = 0.5 * (k - 1.0);
    Complex w_exp = w + km1;
    Complex acc(0.0, 0.0);
    for (const auto& sol : sols) {
        double A1 = (double)f.coeff(sol.m1) * std::pow((double)sol.m1, -km1);
        double A2 = (double)f.coeff(sol.m2) * std::pow((double)sol.m2, -km1);
        double lm2 = (double)ell_2 * (double)sol.m2;
        double hQ = (double)sol.h * (double)Q;
        acc += A1 * A2 * std::pow(1.0 + hQ / lm2, km1) *
               std::exp(-s * std::log(lm2)) * std::exp(-w_exp * std::log(hQ));
    }

    double qA = 0.26; // |A(m)| <= C_A m^{1/4 + eps}
    double C_A = coefficient_envelope(f, qA + km1);
    ZQResult out;
    out.value = acc;
    out.solution_count = (i64)sols.size();
    out.m2_cap = m2_cap;
    out.h_cap = h_cap;
    out.tail_bound = z_tail_certificate(f, C_A, qA, s.real(), w.real() + km1, km1,
                                        Q, ell_1, ell_2, m2_cap, h_cap);
    return out;
}

ZQResult Z_Q_oldform(const QExpansion& f, Complex s, Complex w, i64 Q, i64 ell_1,
                     i64 ell_2) {
    if (s.real() <= 1.0 || w.real() <= 1.0)
        throw std::invalid_argument("Z_Q_oldform: requires Re(s), Re(w) > 1");
    double k = f.k();
    i64 m2_cap, h_cap;
    z_default_caps(f, Q, ell_1, ell_2, m2_cap, h_cap);
    std::vector<ZSolution> sols = z_solutions(f, Q, ell_1, ell_2, m2_cap, h_cap);

    double km1 = 0.5 * (k - 1.0);
    Complex s_exp = s + (k - 1.0);
    Complex w_exp = w + km1;
    Complex acc(0.0, 0.0);
    for (const auto& sol : sols) {
        double a1 = (double)f.coeff(sol.m1);
        double a2 = (double)f.coeff(sol.m2);
        double lm2 = (double)ell_2 * (double)sol.m2;
        double hQ = (double)sol.h * (double)Q;
        acc += a1 * a2 * std::exp(-s_exp * std::log(lm2)) * std::exp(-w_exp * std::log(hQ));
    }

    double q = km1 + 0.26;
    double C = coefficient_envelope(f, q);
    ZQResult out;
    out.value = acc;
    out.solution_count = (i64)sols.size();
    out.m2_cap = m2_cap;
    out.h_cap = h_cap;
    out.tail_bound = z_tail_certificate(f, C, q, s.real() + k - 1.0,
                                        w.real() + km1, 0.0, Q, ell_1, ell_2,
                                        m2_cap, h_cap);
    return out;
}

TwoZReport two_z_relation_check(const QExpansion& f, Complex s, Complex w, i64 Q,
                                i64 ell_1, i64 ell_2) {
    TwoZReport rep;
    rep.factor = std::pow((double)(ell_1 * ell_2), 0.5 * (f.k() - 1.0));
    rep.z_normalized = Z_Q_bruteforce(f, s, w, Q, ell_1, ell_2).value;
    rep.z_oldform_scaled = rep.factor * Z_Q_oldform(f, s, w, Q, ell_1, ell_2).value;
    rep.abs_diff = std::abs(rep.z_normalized - rep.z_oldform_scaled);
    return rep;
}

Complex gamma_factor_G(Complex s, Complex u, double k) {
    // (1/2)(4 pi)^k Gamma(s+u-1) Gamma(s-u) Gamma(1-s) / (Gamma(u) Gamma(1-u) Gamma(s+k-1))
    Complex num = log_gamma(s + u - 1.0) + log_gamma(s - u) + log_gamma(1.0 - s);
    Complex den = log_gamma(u) + log_gamma(1.0 - u) + log_gamma(s + k - 1.0);
    // pole proximity: gamma_c-level guard on each factor
    for (Complex arg : {s + u - 1.0, s - u, 1.0 - s}) {
        if (dist_to_gamma_pole(arg) < 1e-6)
            throw precision_error("gamma_factor_G: argument within 1e-6 of a gamma pole");
    }
    return 0.5 * std::pow(4.0 * PI, k) * std::exp(num - den);
}

bool is_compliant_level(i64 N) {
    if (N < 4 || N % 4 != 0) return false;
    i64 r = N / 4;
    if (r % 2 == 0) return false;
    for (const auto& pe : factorize(r))
        if (pe.second > 1) return false;
    return true;
}

namespace {

void check_eisenstein_level(i64 N, i64 w_cusp) {
    if (!is_compliant_level(N))
        throw std::invalid_argument(
            "eisenstein: level must be 4r with r odd squarefree");
    if (w_cusp < 1 || N % w_cusp != 0)
        throw std::invalid_argument("eisenstein: cusp parameter must divide N");
}

double sigma1(i64 n) {
    double acc = 0.0;
    for (i64 d : divisors(n)) acc += (double)d;
    return acc;
}

// classical Ramanujan sum c_{p^j}(m) from e = v_p(|m|)
double ramanujan_prime_power(i64 p, int j, int e) {
    if (j == 0) return 1.0;
    if (j <= e) {
        double pj1 = 1.0; // p^{j-1}
        for (int i = 1; i < j; ++i) pj1 *= (double)p;
        return pj1 * (double)(p - 1); // phi(p^j)
    }
    if (j == e + 1) return -std::pow((double)p, e);
    return 0.0;
}

int valuation(i64 n, i64 p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

} // namespace

RhoResult eisenstein_rho(i64 N, i64 w_cusp, Complex s, i64 m, i64 c_max) {
    check_eisenstein_level(N, w_cusp);
    if (c_max < 1) throw std::invalid_argument("eisenstein_rho: c_max must be >= 1");
    double sigma = s.real();
    if (m == 0 && sigma <= 1.0 + 1e-9)
        throw std::invalid_argument("eisenstein_rho: m = 0 branch needs Re(s) > 1");
    if (m != 0 && sigma <= 0.5 + 1e-9)
        throw std::invalid_argument("eisenstein_rho: needs Re(s) > 1/2");

    i64 t = N / w_cusp;
    Complex two_s = 2.0 * s;
    Complex acc(0.0, 0.0);
    for (i64 c = 1; c <= c_max; ++c) {
        if (gcd_ll(c, t) != 1) continue;
        double r = ramanujan_restricted(c, w_cusp, m);
        if (r == 0.0) continue;
        acc += r * std::exp(-two_s * std::log((double)c));
    }
    acc *= std::exp(-s * std::log((double)(w_cusp * N)));

    double tail;
    double cm = (double)c_max;
    if (m == 0) {
        // |phi(cw)| <= c w: terms <= w c^{1-2sigma}
        tail = (double)w_cusp *
               (std::pow(cm, 1.0 - 2.0 * sigma) +
                std::pow(cm, 2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0));
    } else {
        // |c_{cw}(m)| <= sigma_1(gcd(cw,|m|)) <= sigma_1(|m|)
        double B = sigma1(std::llabs(m));
        tail = B * (std::pow(cm, -2.0 * sigma) +
                    std::pow(cm, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0));
    }
    tail *= std::pow((double)(w_cusp * N), -sigma);
    return {acc, tail};
}

Complex eisenstein_rho_closed(i64 N, i64 w_cusp, Complex s) {
    check_eisenstein_level(N, w_cusp);
    Complex two_s = 2.0 * s;
    Complex value = (double)euler_phi(w_cusp) *
                    std::exp(-s * std::log((double)(w_cusp * N))) *
                    riemann_zeta(two_s - 1.0) / riemann_zeta(two_s);
    for (const auto& pe : factorize(N)) {
        double p = (double)pe.first;
        value /= 1.0 - std::exp(-two_s * std::log(p));
    }
    for (const auto& pe : factorize(N / w_cusp)) {
        double p = (double)pe.first;
        value *= 1.0 - std::exp((1.0 - two_s) * std::log(p));
    }
    return value;
}

Complex ramanujan_dirichlet_zeta_mul(i64 N, i64 w_cusp, Complex z, i64 m) {
    check_eisenstein_level(N, w_cusp);
    if (m == 0)
        throw std::invalid_argument("ramanujan_dirichlet_zeta_mul: m must be nonzero");
    i64 t = N / w_cusp;
    i64 am = std::llabs(m);

    // primes of t, then primes of w*|m| not dividing t
    std::vector<i64> pt, pother;
    for (const auto& pe : factorize(t)) pt.push_back(pe.first);
    {
        std::vector<i64> seen = pt;
        for (const auto& pe : factorize(am)) {
            if (std::find(seen.begin(), seen.end(), pe.first) == seen.end()) {
                pother.push_back(pe.first);
                seen.push_back(pe.first);
            }
        }
        for (const auto& pe : factorize(w_cusp)) {
            if (std::find(seen.begin(), seen.end(), pe.first) == seen.end()) {
                pother.push_back(pe.first);
                seen.push_back(pe.first);
            }
        }
    }

    Complex value(1.0, 0.0);
    for (i64 p : pt) {
        int ew = valuation(w_cusp, p);
        int em = valuation(am, p);
        double cp = ramanujan_prime_power(p, ew, em);
        value *= cp / (1.0 - std::exp(-z * std::log((double)p)));
    }
    for (i64 p : pother) {
        int ew = valuation(w_cusp, p);
        int em = valuation(am, p);
        Complex Sp(0.0, 0.0);
        for (int j = 0; j + ew <= em + 1; ++j) {
            double cp = ramanujan_prime_power(p, j + ew, em);
            if (cp != 0.0) Sp += cp * std::exp(-z * (double)j * std::log((double)p));
        }
        if (ew > em + 1) Sp = Complex(0.0, 0.0); // only j=0 term, which is 0
        value *= Sp / (1.0 - std::exp(-z * std::log((double)p)));
    }
    return value;
}

ZetaQAResult zeta_Q_a(i64 N, i64 w_cusp, Complex s, Complex u, i64 Q, i64 h_max) {
    check_eisenstein_level(N, w_cusp);
    if (Q < 1 || h_max < 1)
        throw std::invalid_argument("zeta_Q_a: Q and h_max must be positive");
    Complex z = 2.0 - 2.0 * u;      // rho argument 1-u enters as zeta(2(1-u))
    Complex hexp = s + u - 0.5;     // (hQ)^{-(s+u-1/2)}
    double hexp_re = hexp.real();
    if (hexp_re <= 1.25)
        throw std::invalid_argument("zeta_Q_a: h-sum requires Re(s+u-1/2) > 5/4");

    Complex wn_pow = std::exp((u - 1.0) * std::log((double)(w_cusp * N)));
    Complex acc(0.0, 0.0);
    double env = 0.0; // measured |zeta-cancelled rho| / (hQ)^{0.2}
    for (i64 h = 1; h <= h_max; ++h) {
        Complex zc = ramanujan_dirichlet_zeta_mul(N, w_cusp, z, -h * Q);
        double hQ = (double)h * (double)Q;
        acc += wn_pow * zc * std::exp(-hexp * std::log(hQ));
        env = std::max(env, std::abs(zc) / std::pow(hQ, 0.2));
    }
    // tail: |term(h)| <= |wn_pow| env (hQ)^{expo}, expo = 0.2 - Re(s+u-1/2) < -1;
    // sum_{h > h_max} h^{expo} <= h_max^{expo} (1 + h_max/(-expo-1))
    double expo = 0.2 - hexp_re;
    double H = (double)h_max * (double)Q;
    double tail = std::abs(wn_pow) * env * std::pow(H, expo) *
                  (1.0 + (double)h_max / ((-expo) - 1.0));
    ZetaQAResult out;
    out.value = acc;
    out.h_terms = h_max;
    out.tail_bound = tail;
    return out;
}

TripleMellinReport triple_mellin_inner_check(const QExpansion& f, Complex s,
                                             Complex w, i64 Q, i64 ell_1,
                                             i64 ell_2, i64 m_cap,
                                             double gamma_abscissa, double V) {
    double k = f.k();
    double km1 = 0.5 * (k - 1.0);
    Complex z = w + km1; // Barnes kernel parameter
    if (!(gamma_abscissa > 1e-6) || !(gamma_abscissa < z.real() - 1e-6))
        throw std::invalid_argument(
            "triple_mellin_inner_check: need 0 < gamma < Re(w) + (k-1)/2");
    if (V <= 1.0) throw std::invalid_argument("triple_mellin_inner_check: V too small");

    // solutions with both m's <= m_cap (h unconstrained within the cap range)
    std::vector<ZSolution> sols;
    for (const auto& [m1, a1] : f.support) {
        if (m1 < 1) continue;
        if (m1 > m_cap) break;
        for (const auto& [m2, a2] : f.support) {
            if (m2 < 1) continue;
            if (m2 > m_cap) break;
            i64 diff = ell_1 * m1 - ell_2 * m2;
            if (diff <= 0 || diff % Q != 0) continue;
            sols.push_back({m1, m2, diff / Q});
        }
    }

    TripleMellinReport rep;
    rep.solution_count = (i64)sols.size();

    struct Term {
        double A1A2;
        double lm2, lm1, hQ, t;
    };
    std::vector<Term> terms;
    for (const auto& sol : sols) {
        double A1 = (double)f.coeff(sol.m1) * std::pow((double)sol.m1, -km1);
        double A2 = (double)f.coeff(sol.m2) * std::pow((double)sol.m2, -km1);
        double lm2 = (double)ell_2 * (double)sol.m2;
        double lm1 = (double)ell_1 * (double)sol.m1;
        double hQ = (double)sol.h * (double)Q;
        terms.push_back({A1 * A2, lm2, lm1, hQ, hQ / lm2});
        rep.direct_side += A1 * A2 * std::exp(-s * std::log(lm2)) *
                           std::exp(-w * std::log(lm1));
    }

    Complex lg_z = log_gamma(z);
    auto Zfin = [&](Complex u) {
        // Z_Q(s+w-u, u-(k-1)/2) over the fixed solution set
        Complex S = s + w - u;
        Complex acc(0.0, 0.0);
        for (const auto& t : terms)
            acc += t.A1A2 * std::pow(1.0 + t.t, km1) * std::exp(-S * std::log(t.lm2)) *
                   std::exp(-u * std::log(t.hQ));
        return acc;
    };
    auto kernel = [&](Complex u) {
        return std::exp(log_gamma(z - u) + log_gamma(u) - lg_z);
    };

    double max_z_mod = 0.0;
    for (double tau : {0.0, 0.3 * V, 0.7 * V, V})
        max_z_mod = std::max(max_z_mod, std::abs(Zfin(Complex(gamma_abscissa, tau))));

    QuadResult qr = integrate(
        [&](double tau) {
            Complex u(gamma_abscissa, tau);
            return Zfin(u) * kernel(u);
        },
        -V, V, 1e-12);
    rep.contour_side = qr.value / (2.0 * PI);
    rep.contour_tail =
        max_z_mod *
        (std::abs(kernel(Complex(gamma_abscissa, V))) +
         std::abs(kernel(Complex(gamma_abscissa, -V)))) /
        (2.0 * PI * PI);
    rep.abs_diff = std::abs(rep.contour_side - rep.direct_side);
    return rep;
}

} // namespace halfint
