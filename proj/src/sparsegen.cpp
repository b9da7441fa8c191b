#include "upit/sparsegen.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

namespace upit {

PolynomialMap::PolynomialMap(u32 seed_vars, u32 individual_degree_bound,
                             std::vector<SparsePoly> coords)
    : q_(seed_vars), bound_(individual_degree_bound), coords_(std::move(coords)) {
  if (coords_.empty())
    throw std::invalid_argument("PolynomialMap: at least one coordinate");
  for (const auto& c : coords_) {
    require_same_field(c.field(), coords_.front().field());
    if (c.var_count() != q_)
      throw std::invalid_argument("PolynomialMap: coordinate arity != q");
    for (u32 v = 1; v <= q_; ++v)
      if (c.degree_in(v) > bound_)
        throw std::invalid_argument(
            "PolynomialMap: individual degree " + std::to_string(c.degree_in(v)) +
            " exceeds bound " + std::to_string(bound_));
  }
}

std::vector<u64> PolynomialMap::eval(std::span<const u64> seed) const {
  std::vector<u64> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(evaluate(c, seed));
  return out;
}

PolynomialMap identity_map(u32 n, PrimeField f) {
  std::vector<SparsePoly> coords;
  coords.reserve(n);
  for (u32 v = 1; v <= n; ++v) coords.push_back(SparsePoly::variable(n, f, v));
  return PolynomialMap(n, 1, std::move(coords));
}

std::string map_to_text(const PolynomialMap& M) {
  std::ostringstream out;
  out << "map q " << M.seed_vars() << " n " << M.out_dim() << " bound "
      << M.individual_degree_bound() << " field " << M.field().modulus() << "\n";
  for (const auto& c : M.coords()) out << c.to_string() << "\n";
  return out.str();
}

namespace {

class VectorSource final : public PointSource {
 public:
  VectorSource(u32 dim, std::vector<std::vector<u64>> points)
      : dim_(dim), points_(std::move(points)) {}
  u32 dim() const override { return dim_; }
  u64 size() const override { return points_.size(); }
  bool visit(u64 begin, u64 end,
             const std::function<bool(u64, std::span<const u64>)>& fn) const override {
    end = std::min<u64>(end, points_.size());
    for (u64 r = begin; r < end; ++r)
      if (!fn(r, points_[r])) return false;
    return true;
  }

 private:
  u32 dim_;
  std::vector<std::vector<u64>> points_;
};

// Image of a polynomial map over the grid U^q, points ordered by the
// lexicographic rank of their seed tuple (first seed variable most
// significant).
class ImageSource final : public PointSource {
 public:
  ImageSource(PolynomialMap map, std::vector<u64> U, u64 total)
      : map_(std::move(map)), u_(std::move(U)), total_(total) {}
  u32 dim() const override { return map_.out_dim(); }
  u64 size() const override { return total_; }
  bool visit(u64 begin, u64 end,
             const std::function<bool(u64, std::span<const u64>)>& fn) const override {
    end = std::min(end, total_);
    if (begin >= end) return true;
    const u32 q = map_.seed_vars();
    std::vector<u64> digits(q, 0);
    u64 r = begin;
    for (u32 j = q; j-- > 0;) {
      digits[j] = r % u_.size();
      r /= u_.size();
    }
    std::vector<u64> seed(q);
    for (u64 rank = begin; rank < end; ++rank) {
      for (u32 j = 0; j < q; ++j) seed[j] = u_[digits[j]];
      if (!fn(rank, map_.eval(seed))) return false;
      for (u32 j = q; j-- > 0;) {  // odometer, last digit fastest
        if (++digits[j] < u_.size()) break;
        digits[j] = 0;
      }
    }
    return true;
  }

 private:
  PolynomialMap map_;
  std::vector<u64> u_;
  u64 total_;
};

mpz_class mpz_pow(u64 base, u64 exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

}  // namespace

std::shared_ptr<PointSource> make_vector_source(u32 dim,
                                                std::vector<std::vector<u64>> points) {
  for (const auto& p : points)
    if (p.size() != dim)
      throw std::invalid_argument("make_vector_source: point arity mismatch");
  return std::make_shared<VectorSource>(dim, std::move(points));
}

std::vector<std::vector<u64>> HittingSet::materialize(u64 point_budget) const {
  if (size() > point_budget)
    throw ResourceError("materializing " + std::to_string(size()) +
                        " points exceeds the budget of " + std::to_string(point_budget));
  std::vector<std::vector<u64>> out;
  out.reserve(size());
  source_->visit(0, size(), [&](u64, std::span<const u64> pt) {
    out.emplace_back(pt.begin(), pt.end());
    return true;
  });
  return out;
}

void HittingSet::write_csv(std::ostream& out) const {
  source_->visit(0, size(), [&](u64, std::span<const u64> pt) {
    for (size_t i = 0; i < pt.size(); ++i) {
      if (i) out << ',';
      out << pt[i];
    }
    out << '\n';
    return true;
  });
}

HittingSet sparse_hitting_set(u32 n, const mpz_class& s, u64 d,
                              const PrimeField& field,
                              std::optional<u64> t_count_override, u64 point_budget) {
  if (n == 0 || d == 0 || s < 1)
    throw std::invalid_argument("sparse_hitting_set: need n >= 1, s >= 1, d >= 1");
  const mpz_class full = mpz_pow(d + 1, n);
  mpz_class t_count = full;
  bool certified = true;
  if (t_count_override) {
    mpz_class ov = mpz_class(static_cast<unsigned long>(std::max<u64>(*t_count_override, 2)));
    if (ov < t_count) {
      t_count = ov;
      certified = false;
    }
  }
  if (t_count > point_budget)
    throw ResourceError("sparse hitting set needs " + t_count.get_str() +
                        " points, over the budget of " + std::to_string(point_budget) +
                        "; reduce n or the degree, or override the point count");
  const u64 T = t_count.get_ui();

  // The t values 1..T must be distinct nonzero field elements.
  if (mpz_class(T) >= mpz_class(static_cast<unsigned long>(field.modulus())))
    throw ResourceError("sparse hitting set point count reaches the field size");

  // Kronecker exponents (d+1)^j fit in u64 whenever T and the budget do.
  std::vector<u64> exps(n);
  exps[0] = 1;
  for (u32 j = 1; j < n; ++j) exps[j] = exps[j - 1] * (d + 1);

  std::vector<std::vector<u64>> points;
  points.reserve(T);
  for (u64 t = 1; t <= T; ++t) {
    std::vector<u64> pt(n);
    for (u32 j = 0; j < n; ++j) pt[j] = field.pow(t, exps[j]);
    points.push_back(std::move(pt));
  }

  HittingSetMeta meta;
  meta.n = n;
  meta.modulus = field.modulus();
  meta.sparsity_bound = s;
  meta.degree_bound = d;
  meta.construction = "kronecker";
  meta.certified = certified;
  meta.cardinality = t_count;
  return HittingSet(std::move(meta), make_vector_source(n, std::move(points)));
}

PolynomialMap hitting_set_to_generator(const HittingSet& H,
                                       std::span<const u64> anchors) {
  const u32 n = H.meta().n;
  const u64 count = H.size();
  if (count == 0) throw std::invalid_argument("hitting_set_to_generator: empty set");
  const PrimeField field(H.meta().modulus);
  {
    std::set<u64> distinct(anchors.begin(), anchors.end());
    if (distinct.size() != anchors.size())
      throw std::invalid_argument("hitting_set_to_generator: repeated anchors");
  }
  if (anchors.size() != n)
    throw std::invalid_argument("hitting_set_to_generator: need n anchors");

  const std::vector<std::vector<u64>> points = H.materialize();

  if (n == 1) {
    // Degenerate log base: interpolate the |H| points through the
    // consecutive nodes 1..|H| in a single seed variable.
    std::vector<u64> nodes(count);
    for (u64 j = 0; j < count; ++j) nodes[j] = field.reduce_uint(j + 1);
    auto basis = lagrange_basis_coeffs(field, nodes);
    std::vector<u64> coeffs(count, 0);
    for (u64 j = 0; j < count; ++j)
      for (u64 e = 0; e < count; ++e)
        coeffs[e] = field.add(coeffs[e], field.mul(points[j][0], basis[j][e]));
    std::vector<Term> terms;
    for (u64 e = 0; e < count; ++e)
      if (coeffs[e] != 0)
        terms.push_back({e == 0 ? Monomial::one() : Monomial::var(1, u32(e)), coeffs[e]});
    std::vector<SparsePoly> coords{SparsePoly::from_terms(1, field, std::move(terms))};
    return PolynomialMap(1, u32(count - 1), std::move(coords));
  }

  // q = ceil(log_n |H|), at least 1.
  u32 q = 1;
  {
    mpz_class grid = n;
    while (grid < count) {
      grid *= n;
      ++q;
    }
  }
  u64 grid_size = 1;
  for (u32 j = 0; j < q; ++j) grid_size *= n;

  auto basis = lagrange_basis_coeffs(field, anchors);

  // Values on the grid, then one interpolation transform per axis: after
  // processing axis j the tensor holds coefficients in the j-th seed
  // variable. Axis strides follow the lexicographic rank (first variable
  // most significant).
  std::vector<SparsePoly> coords;
  coords.reserve(n);
  for (u32 i = 0; i < n; ++i) {
    std::vector<u64> tensor(grid_size);
    for (u64 r = 0; r < grid_size; ++r)
      tensor[r] = points[std::min<u64>(r, count - 1)][i];
    u64 stride = grid_size / n;  // axis 0 (first seed var) varies slowest
    for (u32 axis = 0; axis < q; ++axis) {
      for (u64 block = 0; block < grid_size; block += stride * n) {
        for (u64 off = 0; off < stride; ++off) {
          std::vector<u64> vals(n), out(n, 0);
          for (u32 a = 0; a < n; ++a) vals[a] = tensor[block + a * stride + off];
          for (u32 a = 0; a < n; ++a)
            for (u32 e = 0; e < n; ++e)
              out[e] = field.add(out[e], field.mul(vals[a], basis[a][e]));
          for (u32 e = 0; e < n; ++e) tensor[block + e * stride + off] = out[e];
        }
      }
      stride /= n;
    }
    // tensor[r]: coefficient of prod_j y_j^{digit_j(r)}.
    std::vector<Term> terms;
    for (u64 r = 0; r < grid_size; ++r) {
      if (tensor[r] == 0) continue;
      std::vector<std::pair<u32, u32>> exps;
      u64 rr = r;
      for (u32 j = q; j-- > 0;) {
        const u32 e = u32(rr % n);
        rr /= n;
        if (e) exps.push_back({j + 1, e});
      }
      terms.push_back({Monomial(std::move(exps)), tensor[r]});
    }
    coords.push_back(SparsePoly::from_terms(q, field, std::move(terms)));
  }
  return PolynomialMap(q, n - 1, std::move(coords));
}

LGenerator l_generator(u32 n, const mpz_class& m, u64 d, const PrimeField& field,
                       std::span<const u64> anchors,
                       std::optional<u64> t_count_override, u64 point_budget) {
  std::vector<u64> default_anchors;
  if (anchors.empty()) {
    default_anchors.resize(n);
    for (u32 j = 0; j < n; ++j) default_anchors[j] = field.reduce_uint(j + 1);
    anchors = default_anchors;
  }
  HittingSet H = sparse_hitting_set(n, m, d, field, t_count_override, point_budget);
  PolynomialMap map = hitting_set_to_generator(H, anchors);
  const u32 q = map.seed_vars();
  const u64 t_count = H.size();
  const bool certified = H.meta().certified;
  return LGenerator{std::move(map), n, q, d, m, t_count, certified};
}

std::shared_ptr<PointSource> enumerate_image(const PolynomialMap& M,
                                             std::vector<u64> U, u64 point_budget) {
  if (U.empty()) throw std::invalid_argument("enumerate_image: empty base set");
  const mpz_class total = mpz_pow(U.size(), M.seed_vars());
  if (total > point_budget)
    throw ResourceError("image enumeration has exactly " + total.get_str() +
                        " points, over the budget of " + std::to_string(point_budget));
  return std::make_shared<ImageSource>(M, std::move(U), total.get_ui());
}

}  // namespace upit
