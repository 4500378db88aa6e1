#pragma once
// Dirichlet characters mod Q with explicit value tables, Gauss sums, and the
// Kronecker-twisted nebentypus characters chi_ell(d) = (ell/d).
//
// Characters are built from a factored-modulus generator decomposition:
// (Z/Q)* = prod (Z/p^e)*, each odd factor cyclic with a primitive root, the
// 2-part generated by -1 and 5.  A character is indexed by its exponent
// vector; enumeration order is mixed-radix over component orders with index 0
// the principal character.  Value tables keep evaluation O(1) in sweeps.
#include <vector>
#include <memory>

#include "halfint/arith.hpp"
#include "halfint/numeric.hpp"

namespace halfint {

class DirichletGroup;

class DirichletCharacter {
public:
    DirichletCharacter() = default;

    i64 modulus() const { return q_; }
    i64 index() const { return index_; }
    // chi(n); 0 when gcd(n, Q) > 1. O(1) table lookup, n arbitrary integer.
    Complex operator()(i64 n) const;
    bool is_principal() const { return index_ == 0; }
    // Multiplicative order in the character group.
    i64 order() const;
    // Pointwise complex conjugate (= inverse character).
    DirichletCharacter conjugate() const;
    // Pointwise product with a character of the same modulus.
    DirichletCharacter operator*(const DirichletCharacter& other) const;
    // True when the value table is real (quadratic or principal).
    bool is_real() const;

    const std::vector<Complex>& values() const { return table_; }
    const std::vector<i64>& exponents() const { return exps_; }

private:
    friend class DirichletGroup;
    std::shared_ptr<const DirichletGroup> group_;
    i64 q_ = 1;
    i64 index_ = 0;
    std::vector<i64> exps_;        // exponent per group component
    std::vector<Complex> table_;   // chi(n) for 0 <= n < Q
};

class DirichletGroup : public std::enable_shared_from_this<DirichletGroup> {
public:
    static std::shared_ptr<const DirichletGroup> make(i64 Q);

    i64 modulus() const { return q_; }
    i64 order() const { return phi_; }                 // = phi(Q)
    const std::vector<i64>& component_orders() const { return comp_orders_; }
    DirichletCharacter character(i64 index) const;     // 0 <= index < phi(Q)

    // Discrete-log exponent vector of n (gcd(n, Q) = 1 required).
    std::vector<i64> dlog(i64 n) const;

private:
    DirichletGroup() = default;
    i64 q_ = 1;
    i64 phi_ = 1;
    std::vector<i64> comp_orders_;              // order of each cyclic component
    std::vector<std::vector<i64>> dlog_table_;  // per component: residue -> exponent (-1 if not coprime)
};

// All phi(Q) characters mod Q, principal first, enumeration deterministic.
std::vector<DirichletCharacter> enumerate_characters(i64 Q);

// Gauss sum g(n, psi) = sum_{u mod Q} psi(u) e(n u / Q), direct summation.
Complex gauss_sum(i64 n, const DirichletCharacter& psi);

// Nebentypus character chi_ell(d) = kronecker(ell, d); ell positive.
struct NebentypusEll {
    i64 ell;
    int operator()(i64 d) const { return kronecker(ell, d); }
};
NebentypusEll nebentypus_ell(i64 ell);

// (conductor, primitive?) by exhaustive induction testing over divisors of Q.
std::pair<i64, bool> conductor_and_primitivity(const DirichletCharacter& chi);

// Convenience: the primitive characters mod Q.
std::vector<DirichletCharacter> primitive_characters(i64 Q);

} // namespace halfint
