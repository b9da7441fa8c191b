#pragma once

#include <gmpxx.h>

#include "upit/circuit.hpp"
#include "upit/rng.hpp"

namespace upit {

// Ground truth by canonical expansion.
bool brute_force_is_zero(const UnmixedCircuit& C,
                         u64 term_budget = kDefaultTermBudget);

// Seeded randomized zero test: `trials` uniform points from F_p^n; one-sided,
// never wrong on identically-zero circuits, error <= (deg/p)^trials otherwise.
bool schwartz_zippel_is_zero(const UnmixedCircuit& C, u32 trials, u64 seed);

struct RandomCircuitParams {
  u32 n = 2;
  u32 k = 2;
  u32 max_factor_degree = 2;
  double factor_density = 0.7;  // chance a variable receives a factor
  double zero_fraction = 0.0;   // chance of a planted identically-zero circuit
};

// Deterministic in (params, seed). The zero branch plants an identity (see
// random_zero_circuit; its own gate count applies). Emitted circuits always
// satisfy their declared degree cap.
UnmixedCircuit random_unmixed_circuit(const RandomCircuitParams& params, u64 seed);

// The expansion-of-products identity family: picks random non-equal monic
// univariates a_j(x_j), b_j(x_j) for j <= r and emits
//   prod_j (a_j + b_j) - sum over T of prod_{j in T} a_j * prod_{j not in T} b_j
// with k = 2^r + 1 gates, identically zero by distributivity. The generator
// re-expands and asserts zero before returning.
UnmixedCircuit random_zero_circuit(u32 r, u32 n, u64 seed);

struct AuditReport {
  std::vector<u64> gate_sparsities;  // ||F_i|| in gate order
  u64 s = 0;                         // derived circuit size
  mpz_class bound;                   // s^(5k^2)
  bool pseudo_simple = false;
  bool minimal = false;
  bool zero = false;
  bool pass = false;  // !(zero && pseudo_simple && minimal) || max <= bound
};

// Measures the sparsity bound hypothesis on one circuit; zero and minimality
// come from the brute-force oracle. A pass=false report would falsify the
// bound and must be treated as a loud failure by callers.
AuditReport sparsity_audit(const UnmixedCircuit& C,
                           u64 term_budget = kDefaultTermBudget);

std::string audit_tsv_line(const AuditReport& r);

}  // namespace upit
