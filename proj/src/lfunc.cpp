#include "halfint/lfunc.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "halfint/special.hpp"

namespace halfint {

namespace {

std::mutex neb_mutex;
std::map<std::tuple<i64, std::string, i64>, Complex> neb_cache;

} // namespace

Complex form_nebentypus(const QExpansion& f, i64 d) {
    i64 N = f.N;
    i64 dr = ((d % N) + N) % N;
    std::tuple<i64, std::string, i64> key{N, f.spec_string, dr};
    {
        std::lock_guard<std::mutex> lock(neb_mutex);
        auto it = neb_cache.find(key);
        if (it != neb_cache.end()) return it->second;
    }
    Complex val = empirical_nebentypus(f, dr);
    // nebentypus values are roots of unity; snap tiny numerical dust
    if (std::abs(std::abs(val) - 1.0) > 1e-6)
        throw precision_error("form_nebentypus: probe returned non-unimodular value");
    val /= std::abs(val);
    std::lock_guard<std::mutex> lock(neb_mutex);
    neb_cache[key] = val;
    return val;
}

double default_split_point(const QExpansion& f, i64 Q) {
    return 1.0 / (std::sqrt((double)f.N) * (double)Q);
}

namespace {

// Incomplete-gamma weight table shared by every twist mod Q at fixed s:
//   W(n)  = a(n) (2 pi n)^{-s'}    Gamma(s',    2 pi n y0)   (upper part)
//   Wd(n) = a(n) (2 pi n)^{-(k-s')} Gamma(k-s', 2 pi n t0)   (reflected part)
// with s' = s + (k-1)/2 and t0 = 1/(N Q^2 y0).
struct GammaWeightTable {
    std::vector<i64> n;
    std::vector<Complex> w_high, w_low;
    double tail_high = 0.0, tail_low = 0.0;
    Complex pref;        // (sqrt(N) Q)^s
    Complex refl_const;  // C/(Nv/Q): everything in the reflection constant
                         // except the v-dependent Kronecker factor
    double y0 = 0.0, t0 = 0.0;
};

// Max |a(n)| n^{-q} over the support: coefficient envelope for tail bounds.
double envelope_exponent(const QExpansion& f) { return 0.5 * (f.k() - 1.0) + 0.75; }

// One incomplete-gamma weighted series: fills values[] with
// a(n) (2 pi n)^{-sigma} Gamma(sigma, 2 pi n cut) and returns a certified
// tail bound for the dropped n > M part.
double fill_weights(const QExpansion& f, Complex sigma, double cut,
                    std::vector<i64>& ns, std::vector<Complex>& vals) {
    double sr = sigma.real();
    double q = envelope_exponent(f);
    double Cenv = coefficient_envelope(f, q);
    ns.clear();
    vals.clear();
    ns.reserve(f.support.size());
    vals.reserve(f.support.size());
    for (auto [n, an] : f.support) {
        if (n == 0) continue;
        double x = TWO_PI * (double)n * cut;
        Complex g = upper_incomplete_gamma(sigma, x);
        Complex w = (double)an * std::exp(-sigma * std::log(TWO_PI * (double)n)) * g;
        ns.push_back(n);
        vals.push_back(w);
    }
    // Tail certificate for n > M: |a(n)| <= Cenv n^q and, for x = 2 pi n cut
    // beyond both 30 and 2|sigma|, |Gamma(sigma,x)| <= 2 x^{sr-1} e^{-x}; the
    // resulting envelope decays like n^{q-1} e^{-2 pi n cut}.
    double n1 = (double)f.M + 1.0;
    double x1 = TWO_PI * n1 * cut;
    double tail;
    if (Cenv == 0.0) return 0.0; // zero form
    if (x1 < std::max(30.0, 2.0 * std::abs(sigma))) {
        // the certified envelope regime was not reached within the expansion
        tail = INFINITY;
    } else {
        double env1 = Cenv * std::pow(n1, q) * std::pow(TWO_PI * n1, -sr) * 2.0 *
                      std::pow(x1, sr - 1.0) * std::exp(-x1);
        // env(n) = const n^{q-1} e^{-2 pi n cut}; ratio between consecutive n
        double rho = std::exp(-TWO_PI * cut) * std::pow((n1 + 1.0) / n1,
                                                        std::max(q - 1.0, 0.0));
        tail = (rho < 0.9999) ? env1 / (1.0 - rho) : INFINITY;
    }
    return tail;
}

GammaWeightTable build_weight_table(const QExpansion& f, Complex s, i64 Q,
                                    double y0, Complex eps_f) {
    if (f.N < 1) throw std::invalid_argument("completed_L: level must be declared");
    if (f.N % 4 != 0)
        throw std::invalid_argument(
            "completed_L: half-integral functional equation needs 4 | N");
    if (Q < 1) throw std::invalid_argument("completed_L: Q must be positive");
    if (gcd_ll(Q, f.N) != 1)
        throw std::invalid_argument("completed_L: gcd(Q, N) > 1 twists are unsupported");
    if (!(y0 > 0.0)) throw std::invalid_argument("completed_L: y0 must be positive");

    double k = f.k();
    Complex sp = s + Complex(0.5 * (k - 1.0), 0.0);   // s'
    Complex ks = Complex(k, 0.0) - sp;                // k - s' = (1-s) + (k-1)/2
    double N = (double)f.N;
    double t0 = 1.0 / (N * (double)Q * (double)Q * y0);

    GammaWeightTable T;
    T.y0 = y0;
    T.t0 = t0;
    T.tail_high = fill_weights(f, sp, y0, T.n, T.w_high);
    std::vector<i64> n2;
    T.tail_low = fill_weights(f, ks, t0, n2, T.w_low);

    // (sqrt(N) Q)^s
    T.pref = std::exp(s * std::log(std::sqrt(N) * (double)Q));

    // reflection constant without the (N v / Q) Kronecker factor:
    //   chi_f(Q) eps_Q^{-2k} eps(f) e^{i pi k} N^{k/2} Q^k (N Q^2)^{-s'}
    bool zero_form = true;
    for (const auto& [n, an] : f.support)
        if (n >= 1 && an != 0) { zero_form = false; break; }
    Complex neb = (Q == 1 || zero_form) ? Complex(1.0, 0.0)
                                        : form_nebentypus(f, Q % f.N);
    Complex epsQ_pow = std::pow(Complex(1.0, 0.0) / eps_d(Q), (double)f.two_k);
    Complex phase = std::exp(Complex(0.0, PI * k));
    T.refl_const = neb * epsQ_pow * eps_f * phase * std::pow(N, 0.5 * k) *
                   std::pow((double)Q, k) *
                   std::exp(-sp * std::log(N * (double)Q * (double)Q));
    return T;
}

// L* for one twist u from a prebuilt table.
TwistedLResult eval_from_table(const GammaWeightTable& T, const QExpansion& f,
                               Complex s, i64 u, i64 Q) {
    i64 ur = ((u % Q) + Q) % Q;
    if (Q > 1 && gcd_ll(ur, Q) != 1)
        throw std::invalid_argument("completed_L_additive: gcd(u, Q) must be 1");
    i64 v = 0;
    if (Q > 1) {
        i64 nu = ((f.N % Q) * ur) % Q;
        v = (Q - mod_inverse(nu, Q)) % Q; // N u v = -1 (mod Q)
    }
    Complex J_high(0.0, 0.0), J_low(0.0, 0.0);
    for (size_t i = 0; i < T.n.size(); ++i) {
        double frac_u = (double)((T.n[i] % Q) * ur % Q) / (double)Q;
        double frac_v = (double)((T.n[i] % Q) * v % Q) / (double)Q;
        J_high += T.w_high[i] * unit_e(frac_u);
        J_low += T.w_low[i] * unit_e(frac_v);
    }
    Complex C = T.refl_const * (double)kronecker(f.N * v, Q);
    if (Q == 1) C = T.refl_const; // (0/1) = 1
    TwistedLResult out;
    out.s = s;
    out.y0 = T.y0;
    out.value = T.pref * (J_high + C * J_low);
    out.truncation_error =
        std::abs(T.pref) * (T.tail_high + std::abs(C) * T.tail_low);
    if (!std::isfinite(out.truncation_error))
        throw precision_error(
            "completed_L_additive: coefficient range insufficient for the "
            "requested split point (tail certificate unbounded)");
    return out;
}

} // namespace

TwistedLResult completed_L_additive(const QExpansion& f, Complex s, i64 u, i64 Q,
                                    double y0, Complex eps_f) {
    GammaWeightTable T = build_weight_table(f, s, Q, y0, eps_f);
    return eval_from_table(T, f, s, u, Q);
}

Complex additive_root_number(const QExpansion& f, Complex s, i64 u, i64 Q,
                             Complex eps_f) {
    i64 ur = ((u % Q) + Q) % Q;
    i64 v = 0;
    if (Q > 1) {
        i64 nu = ((f.N % Q) * ur) % Q;
        v = (Q - mod_inverse(nu, Q)) % Q;
    }
    TwistedLResult lhs =
        completed_L_additive(f, s, ur, Q, default_split_point(f, Q), eps_f);
    TwistedLResult rhs = completed_L_additive(f, Complex(1.0, 0.0) - s, v, Q,
                                              default_split_point(f, Q), eps_f);
    return lhs.value / rhs.value;
}

namespace {

TwistedLResult multiplicative_from_table(const GammaWeightTable& T,
                                         const QExpansion& f, Complex s,
                                         const DirichletCharacter& chi,
                                         bool with_root_number,
                                         const GammaWeightTable* T_dual) {
    i64 Q = chi.modulus();
    DirichletCharacter chibar = chi.conjugate();
    Complex g1 = gauss_sum(1, chibar);
    if (std::abs(g1) < 1e-9)
        throw std::invalid_argument(
            "completed_L_multiplicative: Gauss sum vanishes (character not primitive)");

    Complex acc(0.0, 0.0);
    double trunc = 0.0;
    for (i64 u = 0; u < Q; ++u) {
        if (Q > 1 && gcd_ll(u, Q) != 1) continue;
        if (Q == 1 && u != 0) continue;
        Complex cu = chibar(u);
        TwistedLResult add = eval_from_table(T, f, s, u, Q);
        acc += cu * add.value;
        trunc += std::abs(cu) * add.truncation_error;
    }
    TwistedLResult out;
    out.s = s;
    out.y0 = T.y0;
    out.value = acc / g1;
    out.truncation_error = trunc / std::abs(g1);

    if (with_root_number) {
        // dual side: g(1, chibar)^{-1} sum_w chi'(w) L*(1-s, f, w/Q) with
        // chi' = chi * (./Q)
        Complex acc_dual(0.0, 0.0);
        for (i64 w = 0; w < Q; ++w) {
            if (Q > 1 && gcd_ll(w, Q) != 1) continue;
            if (Q == 1 && w != 0) continue;
            Complex cw = chi(w) * (double)kronecker(w, Q);
            if (Q == 1) cw = Complex(1.0, 0.0);
            TwistedLResult add = eval_from_table(*T_dual, f, Complex(1.0, 0.0) - s, w, Q);
            acc_dual += cw * add.value;
        }
        Complex dual = acc_dual / g1;
        out.empirical_root_number = out.value / dual;
    }
    return out;
}

} // namespace

TwistedLResult completed_L_multiplicative(const QExpansion& f, Complex s,
                                          const DirichletCharacter& chi,
                                          Complex eps_f, bool with_root_number) {
    i64 Q = chi.modulus();
    // the Gauss-sum unfolding into additive twists is only valid for
    // primitive chi (the vanishing-g1 guard alone misses e.g. principal
    // characters of squarefree modulus, where g1 = mu(Q) != 0)
    if (!conductor_and_primitivity(chi).second)
        throw std::invalid_argument(
            "completed_L_multiplicative: character must be primitive");
    double y0 = default_split_point(f, Q);
    GammaWeightTable T = build_weight_table(f, s, Q, y0, eps_f);
    GammaWeightTable T_dual;
    if (with_root_number)
        T_dual = build_weight_table(f, Complex(1.0, 0.0) - s, Q, y0, eps_f);
    return multiplicative_from_table(T, f, s, chi, with_root_number,
                                     with_root_number ? &T_dual : nullptr);
}

Complex central_value(const QExpansion& f, const DirichletCharacter& chi,
                      Complex eps_f) {
    Complex s(0.5, 0.0);
    TwistedLResult r = completed_L_multiplicative(f, s, chi, eps_f, false);
    double k = f.k();
    Complex sp = s + Complex(0.5 * (k - 1.0), 0.0);
    Complex pref = std::exp(s * std::log(std::sqrt((double)f.N) * (double)chi.modulus()) -
                            sp * std::log(TWO_PI) + log_gamma(sp));
    return r.value / pref;
}

std::vector<SweepEntry> sweep_primitive_twists(const QExpansion& f, Complex s,
                                               i64 Q, Complex eps_f,
                                               bool with_root_numbers) {
    double y0 = default_split_point(f, Q);
    GammaWeightTable T = build_weight_table(f, s, Q, y0, eps_f);
    GammaWeightTable T_dual;
    if (with_root_numbers)
        T_dual = build_weight_table(f, Complex(1.0, 0.0) - s, Q, y0, eps_f);

    // additive table shared across characters
    std::vector<TwistedLResult> add(Q);
    std::vector<TwistedLResult> add_dual(with_root_numbers ? Q : 0);
    std::vector<char> valid(Q, 0);
    for (i64 u = 0; u < Q; ++u) {
        if (Q > 1 && gcd_ll(u, Q) != 1) continue;
        if (Q == 1 && u != 0) continue;
        valid[u] = 1;
        add[u] = eval_from_table(T, f, s, u, Q);
        if (with_root_numbers)
            add_dual[u] = eval_from_table(T_dual, f, Complex(1.0, 0.0) - s, u, Q);
    }

    std::vector<SweepEntry> out;
    for (auto& chi : enumerate_characters(Q)) {
        auto [cond, prim] = conductor_and_primitivity(chi);
        (void)cond;
        if (!prim) continue;
        DirichletCharacter chibar = chi.conjugate();
        Complex g1 = gauss_sum(1, chibar);
        Complex acc(0.0, 0.0);
        double trunc = 0.0;
        for (i64 u = 0; u < Q; ++u) {
            if (!valid[u]) continue;
            acc += chibar(u) * add[u].value;
            trunc += add[u].truncation_error;
        }
        TwistedLResult r;
        r.s = s;
        r.y0 = y0;
        r.value = acc / g1;
        r.truncation_error = trunc / std::abs(g1);
        if (with_root_numbers) {
            Complex acc_dual(0.0, 0.0);
            for (i64 u = 0; u < Q; ++u) {
                if (!valid[u]) continue;
                Complex cw = chi(u) * (double)kronecker(u, Q);
                if (Q == 1) cw = Complex(1.0, 0.0);
                acc_dual += cw * add_dual[u].value;
            }
            r.empirical_root_number = r.value / (acc_dual / g1);
        }
        out.push_back({chi.index(), r});
    }
    return out;
}

Complex smoothed_coeff_sum(const QExpansion& f, const DirichletCharacter& chi,
                           const SmoothCutoff& H, double x) {
    if (x <= 0.0) throw std::invalid_argument("smoothed_coeff_sum: x must be positive");
    if (2.0 * x > (double)f.M + 1.0)
        throw std::invalid_argument("smoothed_coeff_sum: coefficient range insufficient (need M >= 2x)");
    double expo = 0.5 * (f.k() - 1.0);
    Complex acc(0.0, 0.0);
    for (auto [n, an] : f.support) {
        if (n == 0) continue;
        double ratio = (double)n / x;
        if (ratio <= 1.0) continue;
        if (ratio >= 2.0) break;
        acc += (double)an * std::pow((double)n, -expo) * H(ratio) * chi(n);
    }
    return acc;
}

Complex smoothed_coeff_sum_gauss(const QExpansion& f, const DirichletCharacter& psi,
                                 const DirichletCharacter& chi_norm,
                                 const SmoothCutoff& H, double x) {
    if (x <= 0.0) throw std::invalid_argument("smoothed_coeff_sum_gauss: x must be positive");
    if (2.0 * x > (double)f.M + 1.0)
        throw std::invalid_argument("smoothed_coeff_sum_gauss: coefficient range insufficient");
    Complex g1 = gauss_sum(1, chi_norm.conjugate());
    if (std::abs(g1) < 1e-9)
        throw std::invalid_argument("smoothed_coeff_sum_gauss: normalizing Gauss sum vanishes");
    double expo = 0.5 * (f.k() - 1.0);
    Complex acc(0.0, 0.0);
    for (auto [n, an] : f.support) {
        if (n == 0) continue;
        double ratio = (double)n / x;
        if (ratio <= 1.0) continue;
        if (ratio >= 2.0) break;
        acc += (double)an * std::pow((double)n, -expo) * H(ratio) * gauss_sum(n, psi);
    }
    return acc / g1;
}

} // namespace halfint
