#include "upit/circuit.hpp"

#include <algorithm>
#include <string>

namespace upit {

UnmixedProduct::UnmixedProduct(PrimeField field, u64 beta,
                               std::vector<UnivariatePoly> factors)
    : field_(field), beta_(field.reduce_uint(beta)) {
  for (auto& f : factors) {
    require_same_field(f.field(), field_);
    if (f.is_zero()) {
      beta_ = 0;
      break;
    }
    if (f.is_constant()) {
      beta_ = field_.mul(beta_, f.coeffs()[0]);
      continue;
    }
    if (!f.is_monic()) {
      auto [lead, monic] = f.monic_split();
      beta_ = field_.mul(beta_, lead);
      f = std::move(monic);
    }
    const u32 v = f.var();
    auto [it, fresh] = factors_.try_emplace(v, std::move(f));
    if (!fresh)
      throw std::invalid_argument("UnmixedProduct: duplicate factor for x" +
                                  std::to_string(it->first));
  }
  if (beta_ == 0) factors_.clear();
}

u64 UnmixedProduct::total_degree() const {
  u64 d = 0;
  for (const auto& [v, f] : factors_) d += f.degree();
  return d;
}

u64 UnmixedProduct::eval(std::span<const u64> point) const {
  u64 acc = beta_;
  for (const auto& [v, f] : factors_) {
    if (acc == 0) return 0;
    acc = field_.mul(acc, f.eval(point[v - 1]));
  }
  return acc;
}

UnmixedCircuit::UnmixedCircuit(u32 n, PrimeField field, u64 degree_cap,
                               std::vector<UnmixedProduct> gates)
    : n_(n), field_(field), degree_cap_(degree_cap), gates_(std::move(gates)) {
  if (n_ == 0) throw std::invalid_argument("UnmixedCircuit: n must be >= 1");
  if (gates_.empty())
    throw std::invalid_argument("UnmixedCircuit: at least one gate required");
  for (size_t i = 0; i < gates_.size(); ++i) {
    require_same_field(gates_[i].field(), field_);
    if (gates_[i].max_var() > n_)
      throw std::invalid_argument("UnmixedCircuit: gate " + std::to_string(i + 1) +
                                  " uses a variable beyond n=" + std::to_string(n_));
    if (gates_[i].total_degree() > degree_cap_)
      throw std::invalid_argument(
          "UnmixedCircuit: gate " + std::to_string(i + 1) + " has degree " +
          std::to_string(gates_[i].total_degree()) + " > cap " +
          std::to_string(degree_cap_));
  }
}

SparsePoly expand_gate(const UnmixedProduct& F, u32 n, u64 term_budget) {
  if (F.max_var() > n)
    throw std::invalid_argument("expand_gate: gate variable beyond arity");
  SparsePoly acc = SparsePoly::constant(n, F.field(), F.beta());
  for (const auto& [v, f] : F.factors()) {
    if (acc.is_zero()) break;
    acc = mul(acc, f.to_sparse(n), term_budget);
  }
  return acc;
}

SparsePoly expand_circuit(const UnmixedCircuit& C, u64 term_budget) {
  SparsePoly acc = SparsePoly::zero(C.var_count(), C.field());
  for (const auto& g : C.gates()) {
    acc = add(acc, expand_gate(g, C.var_count(), term_budget));
    if (acc.term_count() > term_budget)
      throw ResourceError("circuit expansion exceeds term budget");
  }
  return acc;
}

u64 evaluate_circuit(const UnmixedCircuit& C, std::span<const u64> point) {
  if (point.size() != C.var_count())
    throw std::invalid_argument("evaluate_circuit: point arity " +
                                std::to_string(point.size()) + ", expected " +
                                std::to_string(C.var_count()));
  const PrimeField& f = C.field();
  u64 acc = 0;
  for (const auto& g : C.gates()) acc = f.add(acc, g.eval(point));
  return acc;
}

UnmixedCircuit subcircuit(const UnmixedCircuit& C, const std::set<u32>& A) {
  if (A.empty()) throw std::invalid_argument("subcircuit: empty gate set");
  std::vector<UnmixedProduct> gates;
  gates.reserve(A.size());
  for (u32 i : A) {
    if (i == 0 || i > C.gate_count())
      throw std::invalid_argument("subcircuit: gate index " + std::to_string(i) +
                                  " outside 1.." + std::to_string(C.gate_count()));
    gates.push_back(C.gate(i));
  }
  return UnmixedCircuit(C.var_count(), C.field(), C.degree_cap(), std::move(gates));
}

namespace {

void require_nonzero_gates(std::span<const UnmixedProduct> gates) {
  for (const auto& g : gates)
    if (g.is_zero())
      throw std::domain_error("pseudo-gcd is undefined for the zero polynomial");
}

// Factors common to every gate, as (var, factor) pairs.
std::vector<UnivariatePoly> common_factors(std::span<const UnmixedProduct> gates) {
  std::vector<UnivariatePoly> common;
  for (const auto& [v, f] : gates.front().factors()) {
    bool everywhere = true;
    for (size_t i = 1; i < gates.size() && everywhere; ++i) {
      auto it = gates[i].factors().find(v);
      everywhere = (it != gates[i].factors().end()) && it->second == f;
    }
    if (everywhere) common.push_back(f);
  }
  return common;
}

}  // namespace

UnmixedProduct pseudo_gcd(std::span<const UnmixedProduct> gates) {
  if (gates.size() < 2)
    throw std::invalid_argument("pseudo_gcd: needs at least two gates");
  require_nonzero_gates(gates);
  return UnmixedProduct(gates.front().field(), 1, common_factors(gates));
}

UnmixedProduct pseudo_gcd_all(const UnmixedCircuit& C) {
  std::span<const UnmixedProduct> gates(C.gates());
  require_nonzero_gates(gates);
  if (gates.size() == 1) {
    std::vector<UnivariatePoly> fs;
    for (const auto& [v, f] : gates.front().factors()) fs.push_back(f);
    return UnmixedProduct(C.field(), 1, std::move(fs));
  }
  return UnmixedProduct(C.field(), 1, common_factors(gates));
}

bool is_pseudo_simple(const UnmixedCircuit& C) {
  return pseudo_gcd_all(C).factors().empty();
}

SimplifyResult simplify(const UnmixedCircuit& C) {
  UnmixedProduct g = pseudo_gcd_all(C);
  std::vector<UnmixedProduct> gates;
  gates.reserve(C.gate_count());
  for (const auto& gate : C.gates()) {
    std::vector<UnivariatePoly> kept;
    for (const auto& [v, f] : gate.factors())
      if (!g.factors().count(v)) kept.push_back(f);
    gates.push_back(UnmixedProduct(C.field(), gate.beta(), std::move(kept)));
  }
  return {std::move(g),
          UnmixedCircuit(C.var_count(), C.field(), C.degree_cap(), std::move(gates))};
}

bool is_minimal(const UnmixedCircuit& C,
                const std::function<bool(const UnmixedCircuit&)>& zero_oracle) {
  const u32 k = C.gate_count();
  if (k == 1) return true;  // vacuous: no proper nonempty subcircuit
  if (k > 24)
    throw ResourceError("is_minimal: 2^k - 2 subcircuit checks infeasible for k=" +
                        std::to_string(k));
  for (u32 mask = 1; mask + 1 < (u32(1) << k); ++mask) {
    std::set<u32> A;
    for (u32 i = 0; i < k; ++i)
      if (mask & (u32(1) << i)) A.insert(i + 1);
    if (zero_oracle(subcircuit(C, A))) return false;
  }
  return true;
}

std::optional<std::pair<u32, UnivariatePoly>> common_factor_witness(
    std::span<const UnmixedProduct> gates) {
  if (gates.size() < 2)
    throw std::invalid_argument("common_factor_witness: needs at least two gates");
  require_nonzero_gates(gates);
  for (const auto& [v, g] : gates.front().factors()) {
    bool everywhere = true;
    for (size_t i = 1; i < gates.size() && everywhere; ++i) {
      auto it = gates[i].factors().find(v);
      everywhere = (it != gates[i].factors().end()) && it->second == g;
    }
    if (everywhere) return std::make_pair(v, g);
  }
  return std::nullopt;
}

namespace detail {

bool divides_via_d_operator(const UnivariatePoly& f, const SparsePoly& Q) {
  const PrimeField& fld = Q.field();
  require_same_field(f.field(), fld);
  if (f.is_constant())
    throw std::invalid_argument("divides_via_d_operator: f must be non-constant");
  // Scan c = 0, 1, 2, ... for a non-root of f; at most deg(f) values fail.
  u64 c = 0;
  while (f.eval(c) == 0) ++c;
  SparsePoly fs = f.to_sparse(Q.var_count());
  return d_operator(fs, Q, {{f.var(), c}}).is_zero();
}

bool divides_direct(const UnivariatePoly& f, const SparsePoly& Q) {
  const PrimeField& fld = Q.field();
  require_same_field(f.field(), fld);
  if (f.is_constant())
    throw std::invalid_argument("divides_direct: f must be non-constant");
  const u32 v = f.var();
  // Candidate cofactor: the coefficient of x_v^deg(f) in Q, divided by
  // lead(f). If Q = f*H with H free of x_v, this recovers H exactly; for
  // Q = 0 it recovers H = 0, and 0 = f*0 counts as divisible.
  const u32 df = u32(f.degree());
  std::vector<Term> h_terms;
  for (const auto& t : Q.terms())
    if (t.mono.exponent_of(v) == df)
      h_terms.push_back({t.mono.project_zero({v}),
                         fld.div(t.coeff, f.leading_coeff())});
  SparsePoly H = SparsePoly::from_terms(Q.var_count(), fld, std::move(h_terms));
  return mul(f.to_sparse(Q.var_count()), H) == Q;
}

}  // namespace detail

bool divides_indecomposably(const UnivariatePoly& f, const SparsePoly& Q) {
  if (f.is_constant())
    throw std::invalid_argument("divides_indecomposably: f must be non-constant");
  bool a = detail::divides_via_d_operator(f, Q);
  bool b = detail::divides_direct(f, Q);
  if (a != b)
    throw std::logic_error("divides_indecomposably: criterion and direct check disagree");
  return a;
}

u64 circuit_size(const UnmixedCircuit& C) {
  u64 s = 2;
  s = std::max<u64>(s, C.gate_count());
  s = std::max<u64>(s, C.var_count());
  for (const auto& g : C.gates())
    for (const auto& [v, f] : g.factors()) {
      u64 nz = 0;
      for (u64 c : f.coeffs())
        if (c != 0) ++nz;
      s = std::max(s, nz);
    }
  return s;
}

}  // namespace upit
