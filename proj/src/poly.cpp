#include "upit/poly.hpp"

#include <algorithm>
#include <sstream>

namespace upit {

Monomial::Monomial(std::vector<std::pair<u32, u32>> exps) : exps_(std::move(exps)) {
  std::sort(exps_.begin(), exps_.end());
  std::erase_if(exps_, [](const auto& ve) { return ve.second == 0; });
  for (size_t i = 0; i + 1 < exps_.size(); ++i)
    if (exps_[i].first == exps_[i + 1].first)
      throw std::invalid_argument("Monomial: duplicate variable x" +
                                  std::to_string(exps_[i].first));
  for (const auto& [v, e] : exps_)
    if (v == 0) throw std::invalid_argument("Monomial: variables are 1-based");
}

Monomial Monomial::var(u32 v, u32 exp) {
  return Monomial({{v, exp}});
}

u64 Monomial::total_degree() const {
  u64 d = 0;
  for (const auto& [v, e] : exps_) d += e;
  return d;
}

u32 Monomial::exponent_of(u32 v) const {
  for (const auto& [w, e] : exps_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial r;
  r.exps_.reserve(exps_.size() + o.exps_.size());
  size_t i = 0, j = 0;
  while (i < exps_.size() || j < o.exps_.size()) {
    if (j == o.exps_.size() || (i < exps_.size() && exps_[i].first < o.exps_[j].first)) {
      r.exps_.push_back(exps_[i++]);
    } else if (i == exps_.size() || o.exps_[j].first < exps_[i].first) {
      r.exps_.push_back(o.exps_[j++]);
    } else {
      r.exps_.push_back({exps_[i].first, exps_[i].second + o.exps_[j].second});
      ++i, ++j;
    }
  }
  return r;
}

Monomial Monomial::project_zero(const std::set<u32>& A) const {
  Monomial r;
  for (const auto& ve : exps_)
    if (!A.count(ve.first)) r.exps_.push_back(ve);
  return r;
}

Monomial Monomial::rename(const std::map<u32, u32>& var_map) const {
  std::vector<std::pair<u32, u32>> out;
  out.reserve(exps_.size());
  for (const auto& [v, e] : exps_) {
    auto it = var_map.find(v);
    out.push_back({it == var_map.end() ? v : it->second, e});
  }
  return Monomial(std::move(out));
}

bool graded_lex_greater(const Monomial& a, const Monomial& b) {
  const u64 da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first < eb[j].first) return true;   // a has the earlier variable
    if (eb[j].first < ea[i].first) return false;
    if (ea[i].second != eb[j].second) return ea[i].second > eb[j].second;
    ++i, ++j;
  }
  return i < ea.size();  // remaining factors mean an earlier-variable surplus
}

SparsePoly SparsePoly::constant(u32 n, PrimeField f, u64 c) {
  SparsePoly r(n, f);
  c = f.reduce_uint(c);
  if (c != 0) r.terms_.push_back({Monomial::one(), c});
  return r;
}

SparsePoly SparsePoly::variable(u32 n, PrimeField f, u32 v) {
  if (v == 0 || v > n)
    throw std::invalid_argument("SparsePoly::variable: index out of range");
  SparsePoly r(n, f);
  r.terms_.push_back({Monomial::var(v), 1});
  return r;
}

SparsePoly SparsePoly::from_terms(u32 n, PrimeField f, std::vector<Term> terms) {
  std::map<Monomial, u64, GradedLexGreater> acc;
  for (auto& t : terms) {
    if (t.mono.max_var() > n)
      throw std::invalid_argument("SparsePoly: variable beyond arity");
    u64 c = f.reduce_uint(t.coeff);
    if (c == 0) continue;
    auto [it, fresh] = acc.try_emplace(std::move(t.mono), c);
    if (!fresh) {
      it->second = f.add(it->second, c);
      if (it->second == 0) acc.erase(it);
    }
  }
  SparsePoly r(n, f);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) r.terms_.push_back({m, c});
  return r;
}

u64 SparsePoly::total_degree() const {
  // Canonical order puts a maximal-degree term first.
  return terms_.empty() ? 0 : terms_.front().mono.total_degree();
}

u32 SparsePoly::degree_in(u32 v) const {
  u32 d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent_of(v));
  return d;
}

bool SparsePoly::terms_same(const SparsePoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].mono == o.terms_[i].mono))
      return false;
  return true;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    if (t.mono.is_constant()) {
      out << t.coeff;
      continue;
    }
    bool star = false;
    if (t.coeff != 1) {
      out << t.coeff;
      star = true;
    }
    for (const auto& [v, e] : t.mono.exponents()) {
      if (star) out << '*';
      out << 'x' << v;
      if (e != 1) out << '^' << e;
      star = true;
    }
  }
  return out.str();
}

// Installs a term list that is already sorted, merged and zero-free.
struct PolyAccess {
  static SparsePoly make(u32 n, PrimeField f, std::vector<Term> canonical) {
    SparsePoly r(n, f);
    r.terms_ = std::move(canonical);
    return r;
  }
};

namespace {

void require_compatible(const SparsePoly& P, const SparsePoly& Q) {
  require_same_field(P.field(), Q.field());
  if (P.var_count() != Q.var_count())
    throw std::invalid_argument("polynomial arity mismatch: " +
                                std::to_string(P.var_count()) + " vs " +
                                std::to_string(Q.var_count()));
}

SparsePoly merge(const SparsePoly& P, const SparsePoly& Q, bool negate_q) {
  require_compatible(P, Q);
  const PrimeField& f = P.field();
  std::vector<Term> out;
  out.reserve(P.terms().size() + Q.terms().size());
  size_t i = 0, j = 0;
  const auto& a = P.terms();
  const auto& b = Q.terms();
  while (i < a.size() || j < b.size()) {
    bool take_a;
    if (i == a.size()) take_a = false;
    else if (j == b.size()) take_a = true;
    else if (a[i].mono == b[j].mono) {
      u64 c = negate_q ? f.sub(a[i].coeff, b[j].coeff) : f.add(a[i].coeff, b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, c});
      ++i, ++j;
      continue;
    } else {
      take_a = graded_lex_greater(a[i].mono, b[j].mono);
    }
    if (take_a) {
      out.push_back(a[i++]);
    } else {
      u64 c = negate_q ? f.neg(b[j].coeff) : b[j].coeff;
      out.push_back({b[j].mono, c});
      ++j;
    }
  }
  return PolyAccess::make(P.var_count(), f, std::move(out));
}

}  // namespace

SparsePoly add(const SparsePoly& P, const SparsePoly& Q) { return merge(P, Q, false); }
SparsePoly sub(const SparsePoly& P, const SparsePoly& Q) { return merge(P, Q, true); }

SparsePoly mul(const SparsePoly& P, const SparsePoly& Q, u64 term_budget) {
  require_compatible(P, Q);
  const PrimeField& f = P.field();
  std::map<Monomial, u64, GradedLexGreater> acc;
  for (const auto& tp : P.terms()) {
    for (const auto& tq : Q.terms()) {
      Monomial m = tp.mono.times(tq.mono);
      u64 c = f.mul(tp.coeff, tq.coeff);
      auto [it, fresh] = acc.try_emplace(std::move(m), c);
      if (!fresh) {
        it->second = f.add(it->second, c);
        if (it->second == 0) acc.erase(it);
      }
      if (acc.size() > term_budget)
        throw ResourceError("product exceeds term budget of " +
                            std::to_string(term_budget));
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) out.push_back({m, c});
  return PolyAccess::make(P.var_count(), f, std::move(out));
}

SparsePoly scale(const SparsePoly& P, u64 c) {
  const PrimeField& f = P.field();
  c = f.reduce_uint(c);
  if (c == 0) return SparsePoly::zero(P.var_count(), f);
  std::vector<Term> out;
  out.reserve(P.terms().size());
  for (const auto& t : P.terms()) out.push_back({t.mono, f.mul(t.coeff, c)});
  return PolyAccess::make(P.var_count(), f, std::move(out));
}

u64 evaluate(const SparsePoly& P, std::span<const u64> point) {
  if (point.size() != P.var_count())
    throw std::invalid_argument("evaluate: point arity " +
                                std::to_string(point.size()) + ", expected " +
                                std::to_string(P.var_count()));
  const PrimeField& f = P.field();
  u64 acc = 0;
  for (const auto& t : P.terms()) {
    u64 v = t.coeff;
    for (const auto& [var, e] : t.mono.exponents())
      v = f.mul(v, f.pow(point[var - 1], e));
    acc = f.add(acc, v);
  }
  return acc;
}

SparsePoly restrict_vars(const SparsePoly& P, const std::map<u32, u64>& assignment) {
  const PrimeField& f = P.field();
  for (const auto& [v, a] : assignment) {
    if (v == 0 || v > P.var_count())
      throw std::invalid_argument("restrict: variable x" + std::to_string(v) +
                                  " outside arity " + std::to_string(P.var_count()));
    (void)a;
  }
  std::vector<Term> out;
  out.reserve(P.terms().size());
  for (const auto& t : P.terms()) {
    u64 c = t.coeff;
    std::vector<std::pair<u32, u32>> kept;
    for (const auto& [v, e] : t.mono.exponents()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) {
        kept.push_back({v, e});
      } else {
        c = f.mul(c, f.pow(f.reduce_uint(it->second), e));
      }
    }
    if (c != 0) out.push_back({Monomial(std::move(kept)), c});
  }
  return SparsePoly::from_terms(P.var_count(), f, std::move(out));
}

u64 sparsity(const SparsePoly& P) { return P.terms().size(); }

u64 projected_sparsity(const SparsePoly& P, const std::set<u32>& A) {
  for (u32 v : A)
    if (v == 0 || v > P.var_count())
      throw std::invalid_argument("projected_sparsity: variable x" +
                                  std::to_string(v) + " outside arity");
  std::set<Monomial, GradedLexGreater> seen;
  for (const auto& t : P.terms()) seen.insert(t.mono.project_zero(A));
  return seen.size();
}

std::set<u32> var_set(const SparsePoly& P) {
  std::set<u32> vars;
  for (const auto& t : P.terms())
    for (const auto& [v, e] : t.mono.exponents()) vars.insert(v);
  return vars;
}

SparsePoly d_operator(const SparsePoly& P, const SparsePoly& Q,
                      const std::map<u32, u64>& assignment) {
  require_compatible(P, Q);
  return sub(mul(P, restrict_vars(Q, assignment)),
             mul(restrict_vars(P, assignment), Q));
}

SparsePoly compose(const SparsePoly& P, std::span<const SparsePoly> coords,
                   u64 term_budget) {
  if (coords.size() != P.var_count())
    throw std::invalid_argument("compose: " + std::to_string(coords.size()) +
                                " coordinates for arity " +
                                std::to_string(P.var_count()));
  if (coords.empty()) {
    // 0-variate polynomial: a constant; nothing to substitute.
    return P;
  }
  const u32 q = coords[0].var_count();
  const PrimeField& f = coords[0].field();
  require_same_field(P.field(), f);
  for (const auto& c : coords) {
    if (c.var_count() != q)
      throw std::invalid_argument("compose: coordinate arity mismatch");
    require_same_field(c.field(), f);
  }
  // Memoized coordinate powers; exponents stay small under the degree cap.
  std::map<std::pair<u32, u32>, SparsePoly> powers;
  auto coord_power = [&](u32 v, u32 e) -> const SparsePoly& {
    auto it = powers.find({v, e});
    if (it != powers.end()) return it->second;
    SparsePoly r = coords[v - 1];
    for (u32 done = 1; done < e; ++done) {
      auto cached = powers.find({v, e - done});
      if (cached != powers.end()) {
        r = mul(r, cached->second, term_budget);
        break;
      }
      r = mul(r, coords[v - 1], term_budget);
    }
    return powers.emplace(std::make_pair(v, e), std::move(r)).first->second;
  };
  SparsePoly acc = SparsePoly::zero(q, f);
  for (const auto& t : P.terms()) {
    SparsePoly term_val = SparsePoly::constant(q, f, t.coeff);
    for (const auto& [v, e] : t.mono.exponents())
      term_val = mul(term_val, coord_power(v, e), term_budget);
    acc = add(acc, term_val);
    if (acc.term_count() > term_budget)
      throw ResourceError("composition exceeds term budget of " +
                          std::to_string(term_budget));
  }
  return acc;
}

SparsePoly rename_vars(const SparsePoly& P, u32 new_n,
                       const std::map<u32, u32>& var_map) {
  std::vector<Term> out;
  out.reserve(P.terms().size());
  for (const auto& t : P.terms()) out.push_back({t.mono.rename(var_map), t.coeff});
  return SparsePoly::from_terms(new_n, P.field(), std::move(out));
}

std::vector<std::vector<u64>> lagrange_basis_coeffs(const PrimeField& f,
                                                    std::span<const u64> nodes) {
  const size_t m = nodes.size();
  std::vector<std::vector<u64>> basis(m);
  for (size_t a = 0; a < m; ++a) {
    std::vector<u64> num{1};  // product of (y - nodes[b]) over b != a
    u64 denom = 1;
    for (size_t b = 0; b < m; ++b) {
      if (b == a) continue;
      std::vector<u64> next(num.size() + 1, 0);
      for (size_t i = 0; i < num.size(); ++i) {
        next[i + 1] = f.add(next[i + 1], num[i]);
        next[i] = f.add(next[i], f.mul(num[i], f.neg(nodes[b])));
      }
      num = std::move(next);
      denom = f.mul(denom, f.sub(nodes[a], nodes[b]));
    }
    if (denom == 0)
      throw std::invalid_argument("lagrange_basis_coeffs: repeated nodes");
    const u64 scale = f.inv(denom);
    for (auto& c : num) c = f.mul(c, scale);
    basis[a] = std::move(num);
  }
  return basis;
}

UnivariatePoly::UnivariatePoly(u32 var, PrimeField field, std::vector<u64> coeffs)
    : var_(var), field_(field), coeffs_(std::move(coeffs)) {
  if (var_ == 0)
    throw std::invalid_argument("UnivariatePoly: variables are 1-based");
  for (auto& c : coeffs_) c = field_.reduce_uint(c);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

u64 UnivariatePoly::eval(u64 x) const {
  u64 acc = 0;
  for (size_t i = coeffs_.size(); i-- > 0;)
    acc = field_.add(field_.mul(acc, x), coeffs_[i]);
  return acc;
}

SparsePoly UnivariatePoly::to_sparse(u32 n) const {
  if (var_ > n)
    throw std::invalid_argument("UnivariatePoly::to_sparse: variable beyond arity");
  std::vector<Term> terms;
  for (size_t e = 0; e < coeffs_.size(); ++e)
    if (coeffs_[e] != 0)
      terms.push_back({e == 0 ? Monomial::one() : Monomial::var(var_, u32(e)),
                       coeffs_[e]});
  return SparsePoly::from_terms(n, field_, std::move(terms));
}

std::pair<u64, UnivariatePoly> UnivariatePoly::monic_split() const {
  if (is_zero())
    throw std::domain_error("monic_split: zero polynomial has no leading coefficient");
  const u64 lead = coeffs_.back();
  if (lead == 1) return {1, *this};
  const u64 inv = field_.inv(lead);
  std::vector<u64> c = coeffs_;
  for (auto& x : c) x = field_.mul(x, inv);
  return {lead, UnivariatePoly(var_, field_, std::move(c))};
}

}  // namespace upit
