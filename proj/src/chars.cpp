#include "halfint/chars.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace halfint {

namespace {

i64 mod_pow(i64 base, i64 exp, i64 mod) {
    base %= mod;
    if (base < 0) base += mod;
    i64 result = 1 % mod;
    while (exp > 0) {
        if (exp & 1) result = (__int128)result * base % mod;
        base = (__int128)base * base % mod;
        exp >>= 1;
    }
    return result;
}

// Primitive root mod p^e for odd prime p.
i64 primitive_root(i64 p, int e) {
    i64 phi_p = p - 1;
    auto fac = factorize(phi_p);
    i64 g = 0;
    for (i64 cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (auto [q, ex] : fac) {
            (void)ex;
            if (mod_pow(cand, phi_p / q, p) == 1) { ok = false; break; }
        }
        if (ok) { g = cand; break; }
    }
    if (e == 1) return g;
    // lift: g is a primitive root mod p^e unless g^{p-1} = 1 mod p^2
    i64 p2 = p * p;
    if (mod_pow(g, p - 1, p2) == 1) g += p;
    return g;
}

} // namespace

std::shared_ptr<const DirichletGroup> DirichletGroup::make(i64 Q) {
    if (Q < 1) throw std::invalid_argument("DirichletGroup: modulus must be positive");
    struct Access : DirichletGroup {};
    auto grp = std::make_shared<Access>();
    grp->q_ = Q;
    grp->phi_ = euler_phi(Q);

    struct Component {
        i64 pe;        // modulus of this CRT factor
        i64 order;     // order of the cyclic piece
        i64 gen;       // generator (ignored for the "-1" piece of 2^e)
    };
    std::vector<Component> comps;
    for (auto [p, e] : factorize(Q)) {
        i64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;                 // (Z/2)* trivial
            if (e == 2) {
                comps.push_back({pe, 2, pe - 1}); // generated by -1
            } else {
                comps.push_back({pe, 2, pe - 1});           // -1
                comps.push_back({pe, pe / 4, 5});           // 5 has order 2^{e-2}
            }
        } else {
            comps.push_back({pe, euler_phi(pe), primitive_root(p, e)});
        }
    }

    grp->comp_orders_.clear();
    grp->dlog_table_.clear();
    for (const auto& comp : comps) grp->comp_orders_.push_back(comp.order);

    // Build discrete-log tables. For 2^e (e >= 3) the two components share the
    // factor: every odd residue mod 2^e is (-1)^s 5^t uniquely.
    size_t ci = 0;
    for (size_t fi = 0; fi < comps.size(); ++fi) {
        const auto& comp = comps[fi];
        std::vector<i64> table(comp.pe, -1);
        bool is_two_part_pair =
            (comp.pe % 2 == 0) && (comp.pe >= 8) && (comp.gen == comp.pe - 1) &&
            (fi + 1 < comps.size()) && (comps[fi + 1].pe == comp.pe);
        if (is_two_part_pair) {
            std::vector<i64> table5(comp.pe, -1);
            i64 pe = comp.pe;
            i64 pow5 = 1;
            for (i64 t = 0; t < pe / 4; ++t) {
                table[pow5] = 0;       // sign exponent 0
                table5[pow5] = t;
                i64 neg = pe - pow5;
                table[neg] = 1;        // sign exponent 1
                table5[neg] = t;
                pow5 = (__int128)pow5 * 5 % pe;
            }
            grp->dlog_table_.push_back(std::move(table));
            grp->dlog_table_.push_back(std::move(table5));
            ++fi; // consumed the paired component
            ci += 2;
            continue;
        }
        i64 acc = 1 % comp.pe;
        for (i64 t = 0; t < comp.order; ++t) {
            table[acc] = t;
            acc = (__int128)acc * comp.gen % comp.pe;
        }
        grp->dlog_table_.push_back(std::move(table));
        ++ci;
    }
    (void)ci;

    // store component moduli alongside orders via dlog table sizes
    return grp;
}

std::vector<i64> DirichletGroup::dlog(i64 n) const {
    n %= q_;
    if (n < 0) n += q_;
    if (q_ == 1) return {};
    if (gcd_ll(n, q_) != 1)
        throw std::invalid_argument("DirichletGroup::dlog: n not coprime to modulus");
    std::vector<i64> out(comp_orders_.size());
    for (size_t i = 0; i < comp_orders_.size(); ++i) {
        i64 pe = (i64)dlog_table_[i].size();
        i64 e = dlog_table_[i][n % pe];
        if (e < 0) throw std::logic_error("DirichletGroup::dlog: table hole");
        out[i] = e;
    }
    return out;
}

DirichletCharacter DirichletGroup::character(i64 index) const {
    if (index < 0 || index >= phi_)
        throw std::invalid_argument("DirichletGroup::character: index out of range");
    DirichletCharacter chi;
    chi.group_ = shared_from_this();
    chi.q_ = q_;
    chi.index_ = index;
    chi.exps_.assign(comp_orders_.size(), 0);
    i64 rem = index;
    for (size_t i = 0; i < comp_orders_.size(); ++i) {
        chi.exps_[i] = rem % comp_orders_[i];
        rem /= comp_orders_[i];
    }
    chi.table_.assign(q_, Complex(0.0, 0.0));
    for (i64 n = 0; n < q_; ++n) {
        if (gcd_ll(n, q_) != 1) continue;
        double angle = 0.0;
        for (size_t i = 0; i < comp_orders_.size(); ++i) {
            i64 pe = (i64)dlog_table_[i].size();
            i64 e = dlog_table_[i][n % pe];
            angle += (double)chi.exps_[i] * (double)e / (double)comp_orders_[i];
        }
        chi.table_[n] = unit_e(angle);
    }
    if (q_ == 1) chi.table_.assign(1, Complex(1.0, 0.0));
    return chi;
}

Complex DirichletCharacter::operator()(i64 n) const {
    n %= q_;
    if (n < 0) n += q_;
    return table_[n];
}

i64 DirichletCharacter::order() const {
    if (!group_) return 1;
    const auto& orders = group_->component_orders();
    i64 ord = 1;
    for (size_t i = 0; i < orders.size(); ++i) {
        i64 g = gcd_ll(exps_[i], orders[i]);
        i64 comp_ord = orders[i] / (g == 0 ? orders[i] : g);
        if (exps_[i] == 0) comp_ord = 1;
        ord = ord / gcd_ll(ord, comp_ord) * comp_ord;
    }
    return ord;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    if (!group_) return *this;
    const auto& orders = group_->component_orders();
    i64 index = 0, radix = 1;
    for (size_t i = 0; i < orders.size(); ++i) {
        i64 e = (orders[i] - exps_[i]) % orders[i];
        index += e * radix;
        radix *= orders[i];
    }
    return group_->character(index);
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
    if (q_ != other.q_)
        throw std::invalid_argument("DirichletCharacter product: moduli differ");
    if (!group_) return other;
    const auto& orders = group_->component_orders();
    i64 index = 0, radix = 1;
    for (size_t i = 0; i < orders.size(); ++i) {
        i64 e = (exps_[i] + other.exps_[i]) % orders[i];
        index += e * radix;
        radix *= orders[i];
    }
    return group_->character(index);
}

bool DirichletCharacter::is_real() const {
    for (const auto& v : table_)
        if (std::abs(v.imag()) > 1e-12) return false;
    return true;
}

std::vector<DirichletCharacter> enumerate_characters(i64 Q) {
    auto grp = DirichletGroup::make(Q);
    std::vector<DirichletCharacter> out;
    out.reserve(grp->order());
    for (i64 i = 0; i < grp->order(); ++i) out.push_back(grp->character(i));
    return out;
}

Complex gauss_sum(i64 n, const DirichletCharacter& psi) {
    i64 Q = psi.modulus();
    Complex acc(0.0, 0.0);
    for (i64 u = 0; u < Q; ++u) {
        Complex cu = psi(u);
        if (cu == Complex(0.0, 0.0)) continue;
        acc += cu * unit_e((double)((__int128)n % Q * u % Q) / (double)Q);
    }
    return acc;
}

NebentypusEll nebentypus_ell(i64 ell) {
    if (ell < 1) throw std::invalid_argument("nebentypus_ell: ell must be positive");
    return NebentypusEll{ell};
}

std::pair<i64, bool> conductor_and_primitivity(const DirichletCharacter& chi) {
    i64 Q = chi.modulus();
    // chi is induced by a character mod d iff chi(n) = 1 for all n = 1 (mod d)
    // with gcd(n, Q) = 1; the conductor is the least such divisor.
    for (i64 d : divisors(Q)) {
        bool ok = true;
        for (i64 n = 1 + d; n < Q + 1; n += d) {
            i64 r = n % Q;
            if (gcd_ll(r, Q) != 1) continue;
            if (std::abs(chi(r) - Complex(1.0, 0.0)) > 1e-10) { ok = false; break; }
        }
        if (ok) return {d, d == Q};
    }
    return {Q, true};
}

std::vector<DirichletCharacter> primitive_characters(i64 Q) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_characters(Q)) {
        auto [cond, prim] = conductor_and_primitivity(chi);
        (void)cond;
        if (prim) out.push_back(chi);
    }
    return out;
}

} // namespace halfint
