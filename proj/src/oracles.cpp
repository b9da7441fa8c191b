#include "upit/oracles.hpp"

#include <algorithm>
#include <sstream>

namespace upit {

bool brute_force_is_zero(const UnmixedCircuit& C, u64 term_budget) {
  return expand_circuit(C, term_budget).is_zero();
}

bool schwartz_zippel_is_zero(const UnmixedCircuit& C, u32 trials, u64 seed) {
  if (trials == 0)
    throw std::invalid_argument("schwartz_zippel_is_zero: trials must be >= 1");
  Rng rng(seed);
  std::vector<u64> point(C.var_count());
  for (u32 t = 0; t < trials; ++t) {
    for (auto& x : point) x = rng.field_element(C.field());
    if (evaluate_circuit(C, point) != 0) return false;
  }
  return true;
}

namespace {

// Random monic univariate in x_v of the requested degree (>= 1).
UnivariatePoly random_monic(Rng& rng, const PrimeField& f, u32 v, u32 degree) {
  std::vector<u64> coeffs(degree + 1);
  for (u32 e = 0; e < degree; ++e) coeffs[e] = rng.field_element(f);
  coeffs[degree] = 1;
  return UnivariatePoly(v, f, std::move(coeffs));
}

}  // namespace

UnmixedCircuit random_zero_circuit(u32 r, u32 n, u64 seed) {
  if (r == 0 || r > n)
    throw std::invalid_argument("random_zero_circuit: need 1 <= r <= n");
  if (r > 20) throw ResourceError("random_zero_circuit: 2^r gates infeasible");
  PrimeField f;
  Rng rng(seed);

  std::vector<UnivariatePoly> a, b, sums;
  for (u32 j = 1; j <= r; ++j) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 100)
        throw std::runtime_error("random_zero_circuit: could not draw factors");
      UnivariatePoly aj = random_monic(rng, f, j, 1 + u32(rng.uniform(2)));
      UnivariatePoly bj = random_monic(rng, f, j, 1 + u32(rng.uniform(2)));
      if (aj == bj) continue;
      // a_j + b_j, which the head gate normalizes to monic via its beta.
      std::vector<u64> sum(std::max(aj.coeffs().size(), bj.coeffs().size()), 0);
      for (size_t e = 0; e < sum.size(); ++e) {
        u64 c = 0;
        if (e < aj.coeffs().size()) c = f.add(c, aj.coeffs()[e]);
        if (e < bj.coeffs().size()) c = f.add(c, bj.coeffs()[e]);
        sum[e] = c;
      }
      UnivariatePoly sj(j, f, std::move(sum));
      if (sj.is_constant()) continue;  // degenerate sum; redraw
      a.push_back(std::move(aj));
      b.push_back(std::move(bj));
      sums.push_back(std::move(sj));
      break;
    }
  }

  std::vector<UnmixedProduct> gates;
  gates.push_back(UnmixedProduct(f, 1, sums));  // head: prod (a_j + b_j)
  const u64 minus_one = f.neg(1);
  for (u32 mask = 0; mask < (u32(1) << r); ++mask) {
    std::vector<UnivariatePoly> factors;
    for (u32 j = 0; j < r; ++j)
      factors.push_back((mask & (u32(1) << j)) ? a[j] : b[j]);
    gates.push_back(UnmixedProduct(f, minus_one, std::move(factors)));
  }

  u64 cap = n;
  for (const auto& g : gates) cap = std::max(cap, g.total_degree());
  UnmixedCircuit C(n, f, cap, std::move(gates));
  if (!brute_force_is_zero(C))
    throw std::logic_error("random_zero_circuit: planted identity is not zero");
  return C;
}

UnmixedCircuit random_unmixed_circuit(const RandomCircuitParams& params, u64 seed) {
  if (params.n == 0 || params.k == 0)
    throw std::invalid_argument("random_unmixed_circuit: need n >= 1, k >= 1");
  PrimeField f;
  Rng rng(seed);

  if (rng.unit() < params.zero_fraction) {
    if (params.k >= 3) {
      // Largest planted family fitting the requested gate count.
      u32 r = 1;
      while ((u32(1) << (r + 1)) + 1 <= params.k && r + 1 <= params.n) ++r;
      return random_zero_circuit(r, params.n, rng.next_u64());
    }
    if (params.k == 2) {
      // Mirrored pair: F and -F.
      std::vector<UnivariatePoly> factors;
      u64 budget = params.n;  // default low-degree cap
      for (u32 v = 1; v <= params.n && budget > 0; ++v) {
        if (rng.unit() >= params.factor_density) continue;
        const u32 deg = 1 + u32(rng.uniform(std::min<u64>(params.max_factor_degree, budget)));
        factors.push_back(random_monic(rng, f, v, deg));
        budget -= deg;
      }
      const u64 beta = rng.nonzero_field_element(f);
      std::vector<UnmixedProduct> gates;
      gates.push_back(UnmixedProduct(f, beta, factors));
      gates.push_back(UnmixedProduct(f, f.neg(beta), factors));
      return UnmixedCircuit(params.n, f, params.n, std::move(gates));
    }
    // k == 1: only the zero gate computes zero.
    std::vector<UnmixedProduct> gates;
    gates.push_back(UnmixedProduct(f, 0, {}));
    return UnmixedCircuit(params.n, f, params.n, std::move(gates));
  }

  std::vector<UnmixedProduct> gates;
  gates.reserve(params.k);
  for (u32 i = 0; i < params.k; ++i) {
    std::vector<UnivariatePoly> factors;
    u64 budget = params.n;  // default low-degree cap
    for (u32 v = 1; v <= params.n && budget > 0; ++v) {
      if (rng.unit() >= params.factor_density) continue;
      const u32 deg = 1 + u32(rng.uniform(std::min<u64>(params.max_factor_degree, budget)));
      factors.push_back(random_monic(rng, f, v, deg));
      budget -= deg;
    }
    gates.push_back(UnmixedProduct(f, rng.nonzero_field_element(f), std::move(factors)));
  }
  return UnmixedCircuit(params.n, f, params.n, std::move(gates));
}

AuditReport sparsity_audit(const UnmixedCircuit& C, u64 term_budget) {
  AuditReport r;
  r.s = circuit_size(C);
  mpz_ui_pow_ui(r.bound.get_mpz_t(), r.s, 5 * u64(C.gate_count()) * C.gate_count());
  for (const auto& g : C.gates())
    r.gate_sparsities.push_back(sparsity(expand_gate(g, C.var_count(), term_budget)));
  r.zero = brute_force_is_zero(C, term_budget);
  r.pseudo_simple = is_pseudo_simple(C);
  r.minimal = is_minimal(C, [&](const UnmixedCircuit& sub) {
    return brute_force_is_zero(sub, term_budget);
  });
  const u64 max_sparsity =
      *std::max_element(r.gate_sparsities.begin(), r.gate_sparsities.end());
  r.pass = !(r.zero && r.pseudo_simple && r.minimal) || mpz_class(max_sparsity) <= r.bound;
  return r;
}

std::string audit_tsv_line(const AuditReport& r) {
  std::ostringstream out;
  for (size_t i = 0; i < r.gate_sparsities.size(); ++i) {
    if (i) out << ',';
    out << r.gate_sparsities[i];
  }
  out << '\t' << r.bound.get_str() << '\t' << (r.pseudo_simple ? "true" : "false")
      << '\t' << (r.minimal ? "true" : "false") << '\t' << (r.zero ? "true" : "false")
      << '\t' << (r.pass ? "true" : "false");
  return out.str();
}

}  // namespace upit
