#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "upit/ff.hpp"

namespace upit {

// Thrown when a symbolic operation would exceed its term or point budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr u64 kDefaultTermBudget = 10'000'000;

// Sparse multi-index: (variable, exponent) pairs sorted by variable index,
// all exponents positive. The empty list is the constant monomial (0,...,0).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::pair<u32, u32>> exps);

  static Monomial one() { return Monomial(); }
  static Monomial var(u32 v, u32 exp = 1);

  const std::vector<std::pair<u32, u32>>& exponents() const { return exps_; }
  bool is_constant() const { return exps_.empty(); }
  u64 total_degree() const;
  u32 exponent_of(u32 v) const;
  u32 max_var() const { return exps_.empty() ? 0 : exps_.back().first; }

  Monomial times(const Monomial& o) const;
  // I with the coordinates in A set to zero (the projection behind ||P||_A).
  Monomial project_zero(const std::set<u32>& A) const;
  // Renames variables through an injective map; vars absent from the map keep
  // their index.
  Monomial rename(const std::map<u32, u32>& var_map) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

 private:
  std::vector<std::pair<u32, u32>> exps_;
};

// Strict "greater" in graded lexicographic order: higher total degree first,
// ties broken lexicographically with x1 > x2 > ... . Canonical term order.
bool graded_lex_greater(const Monomial& a, const Monomial& b);

struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return graded_lex_greater(a, b);
  }
};

struct Term {
  Monomial mono;
  u64 coeff;
};

// Canonical sparse multivariate polynomial over F_p: terms in descending
// graded-lex order, no zero coefficients. Equal polynomials have identical
// term sequences, so equality and serialization are structural.
class SparsePoly {
 public:
  SparsePoly(u32 n, PrimeField field) : n_(n), field_(field) {}

  static SparsePoly zero(u32 n, PrimeField f) { return SparsePoly(n, f); }
  static SparsePoly constant(u32 n, PrimeField f, u64 c);
  static SparsePoly variable(u32 n, PrimeField f, u32 v);
  // Canonicalizes: merges duplicate monomials, drops zero coefficients.
  static SparsePoly from_terms(u32 n, PrimeField f, std::vector<Term> terms);

  u32 var_count() const { return n_; }
  const PrimeField& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  u64 term_count() const { return terms_.size(); }
  u64 total_degree() const;  // 0 for the zero polynomial
  u32 degree_in(u32 v) const;

  std::string to_string() const;

  bool operator==(const SparsePoly& o) const {
    return n_ == o.n_ && field_ == o.field_ && terms_same(o);
  }

 private:
  bool terms_same(const SparsePoly& o) const;

  u32 n_;
  PrimeField field_;
  std::vector<Term> terms_;

  friend struct PolyAccess;  // internal: installs already-canonical term lists
};

SparsePoly add(const SparsePoly& P, const SparsePoly& Q);
SparsePoly sub(const SparsePoly& P, const SparsePoly& Q);
SparsePoly mul(const SparsePoly& P, const SparsePoly& Q,
               u64 term_budget = kDefaultTermBudget);
SparsePoly scale(const SparsePoly& P, u64 c);

inline SparsePoly operator+(const SparsePoly& P, const SparsePoly& Q) { return add(P, Q); }
inline SparsePoly operator-(const SparsePoly& P, const SparsePoly& Q) { return sub(P, Q); }
inline SparsePoly operator*(const SparsePoly& P, const SparsePoly& Q) { return mul(P, Q); }

u64 evaluate(const SparsePoly& P, std::span<const u64> point);

// P|_{x_A = a_A}: the keys of `assignment` are A. Result stays formally over
// n variables; none of A occurs in it.
SparsePoly restrict_vars(const SparsePoly& P, const std::map<u32, u64>& assignment);

// ||P||: the number of monomials of the canonical form.
u64 sparsity(const SparsePoly& P);

// ||P||_A: distinct multi-indices after zeroing the A coordinates. Counts
// projected index patterns; coefficients are never merged.
u64 projected_sparsity(const SparsePoly& P, const std::set<u32>& A);

// var(P) on the canonical form. Coincides with semantic dependence whenever
// p exceeds every degree in play, which the default modulus guarantees.
std::set<u32> var_set(const SparsePoly& P);

// D_{x_A=a}(P,Q) = P * Q|_{x_A=a} - P|_{x_A=a} * Q.
SparsePoly d_operator(const SparsePoly& P, const SparsePoly& Q,
                      const std::map<u32, u64>& assignment);

// P(C_1,...,C_n) for coordinate polynomials over a common seed-variable
// space. Composition can blow up; the budget bounds intermediate term counts.
SparsePoly compose(const SparsePoly& P, std::span<const SparsePoly> coords,
                   u64 term_budget = kDefaultTermBudget);

SparsePoly rename_vars(const SparsePoly& P, u32 new_n,
                       const std::map<u32, u32>& var_map);

// Coefficient vectors (constant first) of the Lagrange basis over distinct
// nodes: basis[a](nodes[b]) = [a == b], each of degree nodes.size()-1.
std::vector<std::vector<u64>> lagrange_basis_coeffs(const PrimeField& f,
                                                    std::span<const u64> nodes);

// Dense univariate polynomial in x_var: coefficients constant-first with a
// nonzero back() unless zero (empty vector).
class UnivariatePoly {
 public:
  UnivariatePoly(u32 var, PrimeField field, std::vector<u64> coeffs);

  u32 var() const { return var_; }
  const PrimeField& field() const { return field_; }
  const std::vector<u64>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  u64 degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  u64 leading_coeff() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  bool is_monic() const { return leading_coeff() == 1; }

  u64 eval(u64 x) const;  // Horner
  SparsePoly to_sparse(u32 n) const;

  // (leading coefficient, monic remainder); undefined on zero.
  std::pair<u64, UnivariatePoly> monic_split() const;

  bool operator==(const UnivariatePoly& o) const {
    return var_ == o.var_ && field_ == o.field_ && coeffs_ == o.coeffs_;
  }

 private:
  u32 var_;
  PrimeField field_;
  std::vector<u64> coeffs_;
};

}  // namespace upit
