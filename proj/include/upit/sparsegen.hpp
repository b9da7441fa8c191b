#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "upit/poly.hpp"

namespace upit {

inline constexpr u64 kDefaultPointBudget = 10'000'000;

// Tuple of polynomials F^q -> F^n over a shared seed-variable space, with a
// per-seed-variable degree bound asserted at construction.
class PolynomialMap {
 public:
  PolynomialMap(u32 seed_vars, u32 individual_degree_bound,
                std::vector<SparsePoly> coords);

  u32 seed_vars() const { return q_; }
  u32 out_dim() const { return u32(coords_.size()); }
  u32 individual_degree_bound() const { return bound_; }
  const std::vector<SparsePoly>& coords() const { return coords_; }
  const PrimeField& field() const { return coords_.front().field(); }

  std::vector<u64> eval(std::span<const u64> seed) const;

 private:
  u32 q_;
  u32 bound_;
  std::vector<SparsePoly> coords_;
};

PolynomialMap identity_map(u32 n, PrimeField f);

inline SparsePoly compose(const SparsePoly& P, const PolynomialMap& M,
                          u64 term_budget = kDefaultTermBudget) {
  return compose(P, std::span<const SparsePoly>(M.coords()), term_budget);
}

// Header plus one canonical polynomial line per coordinate.
std::string map_to_text(const PolynomialMap& M);

// A finite point enumeration of fixed dimension and deterministic order.
// Ranks are dense in [0, size); visit streams a rank range and may stop
// early when the callback returns false (visit then also returns false).
class PointSource {
 public:
  virtual ~PointSource() = default;
  virtual u32 dim() const = 0;
  virtual u64 size() const = 0;
  virtual bool visit(u64 begin, u64 end,
                     const std::function<bool(u64 rank, std::span<const u64>)>& fn)
      const = 0;
};

std::shared_ptr<PointSource> make_vector_source(u32 dim,
                                                std::vector<std::vector<u64>> points);

struct HittingSetMeta {
  u32 n = 0;
  u64 modulus = 0;
  mpz_class sparsity_bound;  // class parameter (s, or m for the layered set)
  u64 degree_bound = 0;
  std::string construction;  // "kronecker" or "sgen-image"
  bool certified = true;     // false once any parameter was overridden
  mpz_class cardinality;
  // layered-generator extras (zero/empty otherwise)
  u32 k = 0;
  u32 q = 0;
  u64 circuit_size = 0;
  u64 u_size = 0;
};

// Point set with a guarantee recorded in meta. Points stream from the
// backing source; materialize() is explicit and budgeted.
class HittingSet {
 public:
  HittingSet(HittingSetMeta meta, std::shared_ptr<const PointSource> source)
      : meta_(std::move(meta)), source_(std::move(source)) {}

  const HittingSetMeta& meta() const { return meta_; }
  const PointSource& source() const { return *source_; }
  u64 size() const { return source_->size(); }

  std::vector<std::vector<u64>> materialize(u64 point_budget = kDefaultPointBudget) const;
  // CSV of decimal residues, one point per row.
  void write_csv(std::ostream& out) const;

 private:
  HittingSetMeta meta_;
  std::shared_ptr<const PointSource> source_;
};

// Kronecker-substitution hitting set for n-variate polynomials of individual
// degree <= d: points (t, t^(d+1), ..., t^((d+1)^(n-1))) for t = 1..T with
// T = (d+1)^n. Distinct monomials map to distinct powers of t, so a nonzero
// polynomial becomes a nonzero univariate of degree < (d+1)^n, which cannot
// vanish on all T values. The sparsity parameter does not shrink this
// construction; t_count_override truncates T for experimental runs and
// clears the certified flag.
HittingSet sparse_hitting_set(u32 n, const mpz_class& s, u64 d,
                              const PrimeField& field = PrimeField(),
                              std::optional<u64> t_count_override = std::nullopt,
                              u64 point_budget = kDefaultPointBudget);

// Indexes the points of H by anchor tuples in {c_1..c_n}^q with
// q = ceil(log_n |H|) (minimum 1; the grid is padded by repeating the last
// point) and interpolates each output coordinate over the grid. Individual
// degrees stay <= n-1. For n = 1 the single-anchor grid degenerates: the
// points are interpolated through consecutive nodes 1..|H| in one seed
// variable with degree |H|-1.
PolynomialMap hitting_set_to_generator(const HittingSet& H,
                                       std::span<const u64> anchors);

struct LGenerator {
  PolynomialMap map;
  u32 n;
  u32 q;
  u64 d;
  mpz_class m;
  u64 t_count;
  bool certified;
};

// Generator for m-sparse degree-<= d polynomials: the Kronecker set pushed
// through hitting_set_to_generator. Anchors default to 1..n.
LGenerator l_generator(u32 n, const mpz_class& m, u64 d, const PrimeField& field,
                       std::span<const u64> anchors = {},
                       std::optional<u64> t_count_override = std::nullopt,
                       u64 point_budget = kDefaultPointBudget);

// { M(u) : u in U^q } in lexicographic seed order (first seed variable most
// significant, U taken in the given order). Streamed; |U|^q over the budget
// raises ResourceError carrying the exact count.
std::shared_ptr<PointSource> enumerate_image(const PolynomialMap& M,
                                             std::vector<u64> U,
                                             u64 point_budget = kDefaultPointBudget);

}  // namespace upit
