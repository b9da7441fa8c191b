#pragma once

#include "upit/circuit.hpp"
#include "upit/sparsegen.hpp"

namespace upit {

// Step polynomials over anchors c_0..c_n: W_i is the degree-<= n interpolant
// with W_i(c_j) = 1 for j >= i and 0 for j < i. The value table is
// re-evaluated and asserted at construction.
struct StepFamily {
  PrimeField field;
  std::vector<u64> anchors;           // c_0..c_n
  std::vector<UnivariatePoly> steps;  // W_1..W_n, univariate in a formal z
};

StepFamily step_polynomials(const PrimeField& field, std::vector<u64> anchors);

// The layered generator S_{l,m}: F^(q*l+l) -> F^n built by the recursion
//   S^i_l = S^i_{l-1} * W_i(z_l) + L^i(y_l) * (1 - W_i(z_l)),   S^i_0 = 0.
// Seed variables are numbered (y_1[1..q], ..., y_l[1..q], z_1, ..., z_l):
// y-block b occupies (b-1)q+1 .. bq and z_b sits at q*l + b.
class SGenerator {
 public:
  SGenerator(u32 depth, mpz_class m, LGenerator base, StepFamily steps,
             PolynomialMap coords, bool certified);

  u32 depth() const { return l_; }
  const mpz_class& m() const { return m_; }
  u32 n() const { return base_.n; }
  u32 q() const { return base_.q; }
  u64 d() const { return base_.d; }
  const LGenerator& base() const { return base_; }
  const StepFamily& steps() const { return steps_; }
  const PolynomialMap& coords() const { return coords_; }
  const PrimeField& field() const { return coords_.field(); }
  bool certified() const { return certified_; }

  u32 seed_arity() const { return q() * l_ + l_; }
  u32 y_var(u32 block, u32 j) const { return (block - 1) * q() + j; }
  u32 z_var(u32 block) const { return q() * l_ + block; }

 private:
  u32 l_;
  mpz_class m_;
  LGenerator base_;
  StepFamily steps_;
  PolynomialMap coords_;
  bool certified_;
};

struct SGenOptions {
  std::vector<u64> anchors;  // c_0..c_n; defaults to 0..n
  std::optional<u64> t_count_override;
  u64 term_budget = kDefaultTermBudget;
  u64 point_budget = kDefaultPointBudget;
};

SGenerator s_generator(u32 l, const mpz_class& m, u32 n, u64 d,
                       const PrimeField& field, const SGenOptions& opts = {});

// Checks S_{l,m}|_{z_l = c_d} == (S^1_{l-1,m},...,S^d_{l-1,m},
// L^{d+1}_m,...,L^n_m) coordinate-by-coordinate on canonical forms, with the
// right-hand side renamed into S_l's seed space.
bool restriction_identity_check(const SGenerator& S, u32 d);

struct PitOverrides {
  std::optional<u64> m_override;  // replaces m = s^(5k^2+2); also truncates
                                  // the Kronecker range to min((d+1)^n, m)
  std::optional<u64> u_size;      // replaces |U| = n^3 + 1
};

struct PitBudgets {
  u64 points = kDefaultPointBudget;
  u64 terms = kDefaultTermBudget;
};

// Algorithm: U = {0,...,n^3} (or the override), H = S_{k,m}((U^q)^k x U^k).
// Any override clears the certified flag on the result's meta; so does a
// parameter set under which the grid cannot separate the composed map's
// individual degrees.
HittingSet build_hitting_set(const UnmixedCircuit& C, const PitOverrides& ov = {},
                             const PitBudgets& budgets = {});

struct PitResult {
  bool is_zero;
  std::vector<u64> witness;  // first witness in enumeration order, else empty
  bool certified;            // the set's parameter regime; overrides taint it
  u64 points_tested;
};

// Evaluates C on every point of H (black-box; gates are never expanded) and
// reports ZERO or the first NONZERO witness in enumeration order. Witnesses
// are re-evaluated before being returned. jobs > 1 splits the scan into
// chunks; the reported witness is still the first in enumeration order.
PitResult black_box_pit(const UnmixedCircuit& C, const HittingSet& H, u32 jobs = 1);

// Symbolic P(S_{k,m}) over the q*k + k seed variables, composing gate by
// gate through the unmixed structure. Practical only at reduced parameters.
SparsePoly compose_circuit_with_generator(const UnmixedCircuit& C, const SGenerator& S,
                                          u64 term_budget = kDefaultTermBudget);

}  // namespace upit
