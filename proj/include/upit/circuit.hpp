#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "upit/poly.hpp"

namespace upit {

// One multiplication gate of an unmixed circuit: beta * prod_j f_j(x_j) with
// at most one univariate factor per variable.
//
// Normal form, established at construction:
//   - every stored factor is monic and non-constant (constant factors and
//     leading coefficients fold into beta);
//   - beta == 0 represents the identically-zero gate and forces an empty
//     factor set.
// The factor-set operations (pseudo-gcd, witness search) rely on this form:
// factor equality is exact coefficient equality of monic polynomials.
class UnmixedProduct {
 public:
  UnmixedProduct(PrimeField field, u64 beta, std::vector<UnivariatePoly> factors);

  const PrimeField& field() const { return field_; }
  u64 beta() const { return beta_; }
  const std::map<u32, UnivariatePoly>& factors() const { return factors_; }
  bool is_zero() const { return beta_ == 0; }
  u32 max_var() const { return factors_.empty() ? 0 : factors_.rbegin()->first; }
  u64 total_degree() const;

  u64 eval(std::span<const u64> point) const;

  bool operator==(const UnmixedProduct& o) const {
    return field_ == o.field_ && beta_ == o.beta_ && factors_ == o.factors_;
  }

 private:
  PrimeField field_;
  u64 beta_;
  std::map<u32, UnivariatePoly> factors_;
};

// Sum of k unmixed gates over n variables with a declared degree cap (the
// low-degree contract; every gate's total degree must stay under it).
class UnmixedCircuit {
 public:
  UnmixedCircuit(u32 n, PrimeField field, u64 degree_cap,
                 std::vector<UnmixedProduct> gates);

  u32 var_count() const { return n_; }
  const PrimeField& field() const { return field_; }
  u64 degree_cap() const { return degree_cap_; }
  u32 gate_count() const { return u32(gates_.size()); }
  const std::vector<UnmixedProduct>& gates() const { return gates_; }
  const UnmixedProduct& gate(u32 i) const { return gates_.at(i - 1); }  // 1-based

 private:
  u32 n_;
  PrimeField field_;
  u64 degree_cap_;
  std::vector<UnmixedProduct> gates_;
};

// beta * prod f_j expanded to canonical sparse form. Sparsity is exactly the
// product of factor sparsities: univariates in distinct variables cannot
// cancel across factors.
SparsePoly expand_gate(const UnmixedProduct& F, u32 n,
                       u64 term_budget = kDefaultTermBudget);

// Sum of gate expansions; the brute-force view of the circuit.
SparsePoly expand_circuit(const UnmixedCircuit& C,
                          u64 term_budget = kDefaultTermBudget);

// Black-box evaluation: per-gate Horner, never expands.
u64 evaluate_circuit(const UnmixedCircuit& C, std::span<const u64> point);

// C_A for a nonempty set A of 1-based gate indices, order preserved.
UnmixedCircuit subcircuit(const UnmixedCircuit& C, const std::set<u32>& A);

// Product of the monic factors common to every gate's factor set (exact
// coefficient equality at the same variable). Throws std::domain_error on a
// zero gate; requires at least two gates.
UnmixedProduct pseudo_gcd(std::span<const UnmixedProduct> gates);

// gcd over all gates; the k = 1 convention takes the gate's whole monic
// factor product (intersection of a single factor set).
UnmixedProduct pseudo_gcd_all(const UnmixedCircuit& C);

bool is_pseudo_simple(const UnmixedCircuit& C);

struct SimplifyResult {
  UnmixedProduct gcd;        // beta = 1
  UnmixedCircuit simplified;  // gcd factors deleted from every gate
};

// sim(C) = C / gcd(C)_pseudo. expand(gcd) * expand(sim(C)) == expand(C).
SimplifyResult simplify(const UnmixedCircuit& C);

// True iff every proper nonempty subset of gates sums to a nonzero
// polynomial; 2^k - 2 oracle calls. k = 1 is vacuously minimal.
bool is_minimal(const UnmixedCircuit& C,
                const std::function<bool(const UnmixedCircuit&)>& zero_oracle);

// A non-constant factor g of gate 1 present (identically) in every other
// gate, together with its variable. Present iff pseudo_gcd != 1.
std::optional<std::pair<u32, UnivariatePoly>> common_factor_witness(
    std::span<const UnmixedProduct> gates);

namespace detail {
// The two independent routes under divides_indecomposably; exposed so tests
// can pit them against each other.
bool divides_via_d_operator(const UnivariatePoly& f, const SparsePoly& Q);
bool divides_direct(const UnivariatePoly& f, const SparsePoly& Q);
}  // namespace detail

// True iff Q = f * H with H free of f's variable. Runs both routes and
// throws std::logic_error if they ever disagree.
bool divides_indecomposably(const UnivariatePoly& f, const SparsePoly& Q);

// Derived size s = max(2, k, n, max factor sparsity): the largest quantity
// any of the sparsity bounds is stated against, so every bound of the form
// s^e remains valid whichever resource the instance stresses.
u64 circuit_size(const UnmixedCircuit& C);

}  // namespace upit
