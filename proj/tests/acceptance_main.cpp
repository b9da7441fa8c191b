// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "upit/circfmt.hpp"
#include "upit/oracles.hpp"
#include "upit/sgen.hpp"

using namespace upit;

namespace {

const PrimeField F;

mpz_class mpow(u64 base, u64 exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

u32 q_for(u32 n, const mpz_class& t_count) {
  if (n == 1) return 1;
  u32 q = 1;
  mpz_class grid = n;
  while (grid < t_count) {
    grid *= n;
    ++q;
  }
  return q;
}

// Deterministic override policy for the oracle-equivalence suite: keep the
// point count under `limit`, preferring a large evaluation grid U and a large
// Kronecker range T. Defaults win when they fit.
PitOverrides tuned_overrides(const UnmixedCircuit& C, u64 limit) {
  const u32 n = C.var_count();
  const u32 k = C.gate_count();
  const u64 d = std::max<u64>(1, C.degree_cap());
  const mpz_class t_full = mpow(d + 1, n);

  const u64 u_default = u64(n) * n * n + 1;
  if (mpow(u_default, u64(q_for(n, t_full) + 1) * k) <= limit) return {};

  struct Candidate {
    std::optional<u64> m_ov;
    u64 u = 0;
    mpz_class t;
  };
  std::optional<Candidate> best;
  std::vector<std::optional<u64>> truncations{std::nullopt};
  for (mpz_class t = n; t < t_full; t *= n)
    truncations.push_back(t.get_ui());
  for (const auto& m_ov : truncations) {
    mpz_class t = t_full;
    if (m_ov && mpz_class(static_cast<unsigned long>(*m_ov)) < t)
      t = static_cast<unsigned long>(*m_ov);
    const u32 q = q_for(n, t);
    u64 u = 0;
    for (u64 cand = 2; cand <= 64; ++cand) {
      if (mpow(cand, u64(q + 1) * k) > limit) break;
      u = cand;
    }
    if (u < 2) continue;
    const u64 score_u = std::min<u64>(u, 16);
    if (!best || score_u > std::min<u64>(best->u, 16) ||
        (score_u == std::min<u64>(best->u, 16) && t > best->t)) {
      best = Candidate{m_ov, u, t};
    }
  }
  if (!best) return PitOverrides{std::nullopt, 2};
  return PitOverrides{best->m_ov, best->u};
}

SparsePoly random_poly(Rng& rng, u32 n, u32 max_terms, u32 max_exp) {
  std::vector<Term> terms;
  const u32 count = 1 + u32(rng.uniform(max_terms));
  for (u32 t = 0; t < count; ++t) {
    std::vector<std::pair<u32, u32>> exps;
    for (u32 v = 1; v <= n; ++v) {
      const u32 e = u32(rng.uniform(max_exp + 1));
      if (e) exps.push_back({v, e});
    }
    terms.push_back({Monomial(std::move(exps)), rng.field_element(F)});
  }
  return SparsePoly::from_terms(n, F, std::move(terms));
}

const char* kIdentityFile =
    "vars 2\n"
    "field 101\n"
    "term 1 (x1: 1,1) (x2: 1,1)\n"
    "term 100 (x1: 0,1) (x2: 0,1)\n"
    "term 100 (x1: 0,1)\n"
    "term 100 (x2: 0,1)\n"
    "term 100\n";

int failures = 0;

void criterion(int idx, const std::string& name,
               const std::function<bool(std::string&)>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", secs);
  std::cout << "[" << idx << "] " << name << " ... " << (ok ? "PASS" : "FAIL")
            << " (" << detail << (detail.empty() ? "" : ", ") << buf << ")\n";
  if (!ok) ++failures;
}

}  // namespace

int main() {
  criterion(1, "oracle equivalence on 200 random circuits", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    int agree = 0;
    for (int i = 0; i < 200; ++i) {
      RandomCircuitParams params;
      params.n = 1 + u32(i % 3);
      params.k = 1 + u32((i / 3) % 3);
      params.max_factor_degree = 2;
      params.zero_fraction = 0.3;
      UnmixedCircuit C = random_unmixed_circuit(params, 1000 + u64(i));

      PitOverrides ov = tuned_overrides(C, 1'000'000);
      HittingSet H = build_hitting_set(C, ov);
      if (H.size() > 1'000'000) return false;
      const bool pit = black_box_pit(C, H, 2).is_zero;
      const bool bf = brute_force_is_zero(C);
      const bool sz = schwartz_zippel_is_zero(C, 20, 77000 + u64(i));
      if (pit != bf || bf != sz) {
        detail = "disagreement at instance " + std::to_string(i);
        return false;
      }
      ++agree;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = std::to_string(agree) + "/200 identical";
    return agree == 200 && secs < 120.0;
  });

  criterion(2, "restriction identity at every splice point", [](std::string& detail) {
    int checked = 0;
    for (u32 l : {1u, 2u}) {
      for (u32 n : {2u, 3u}) {
        SGenerator S = s_generator(l, 4, n, n, F);
        for (u32 d = 0; d <= n; ++d) {
          if (!restriction_identity_check(S, d)) {
            detail = "failed at l=" + std::to_string(l) + " n=" + std::to_string(n) +
                     " d=" + std::to_string(d);
            return false;
          }
          ++checked;
        }
      }
    }
    detail = std::to_string(checked) + " splices byte-equal";
    return true;
  });

  criterion(3, "divisibility criterion vs direct division", [](std::string& detail) {
    Rng rng(4242);
    const u32 n = 3;
    int divisible = 0, indivisible = 0, agree = 0;
    while (divisible + indivisible < 300) {
      const bool want_divisible = (divisible + indivisible) % 2 == 0;
      const u32 v = 1 + u32(rng.uniform(n));
      std::vector<u64> coeffs(2 + rng.uniform(2));
      for (auto& c : coeffs) c = rng.field_element(F);
      coeffs.back() = rng.nonzero_field_element(F);
      UnivariatePoly f(v, F, coeffs);

      std::vector<Term> hterms;
      for (int t = 0; t < 3; ++t) {
        std::vector<std::pair<u32, u32>> exps;
        for (u32 w = 1; w <= n; ++w) {
          if (w == v) continue;
          const u32 e = u32(rng.uniform(3));
          if (e) exps.push_back({w, e});
        }
        hterms.push_back({Monomial(std::move(exps)), rng.field_element(F)});
      }
      SparsePoly H = SparsePoly::from_terms(n, F, std::move(hterms));
      if (H.is_zero()) continue;
      SparsePoly Q = mul(f.to_sparse(n), H);
      if (!want_divisible) {
        std::vector<std::pair<u32, u32>> exps{{v, u32(rng.uniform(2))}};
        Q = add(Q, SparsePoly::from_terms(
                       n, F, {{Monomial(std::move(exps)), rng.nonzero_field_element(F)}}));
        if (upit::detail::divides_direct(f, Q)) continue;  // perturbation collapsed
        ++indivisible;
      } else {
        ++divisible;
      }
      if (upit::detail::divides_via_d_operator(f, Q) !=
          upit::detail::divides_direct(f, Q)) {
        detail = "routes disagree";
        return false;
      }
      ++agree;
    }
    detail = std::to_string(agree) + " pairs (" + std::to_string(divisible) + " divisible)";
    return agree == 300 && divisible == 150;
  });

  criterion(4, "pseudo-gcd vs common-factor witness", [](std::string& detail) {
    Rng rng(777);
    const u32 n = 3;
    int checked = 0;
    for (int iter = 0; iter < 300; ++iter) {
      const u32 k = 2 + u32(rng.uniform(3));
      const bool plant = rng.uniform(2) == 0;
      const u32 planted_var = 1 + u32(rng.uniform(n));
      const u64 planted_c = rng.field_element(F);
      std::vector<UnmixedProduct> gates;
      for (u32 i = 0; i < k; ++i) {
        std::vector<UnivariatePoly> fs;
        for (u32 v = 1; v <= n; ++v) {
          if (plant && v == planted_var) {
            fs.push_back(UnivariatePoly(v, F, {planted_c, 1}));
            continue;
          }
          if (rng.uniform(2) == 0) continue;
          fs.push_back(UnivariatePoly(v, F, {rng.field_element(F), 1}));
        }
        gates.push_back(UnmixedProduct(F, rng.nonzero_field_element(F), std::move(fs)));
      }
      const bool witness = common_factor_witness(gates).has_value();
      const bool nontrivial = !pseudo_gcd(gates).factors().empty();
      if (witness != nontrivial) {
        detail = "mismatch at iteration " + std::to_string(iter);
        return false;
      }
      ++checked;
    }
    detail = std::to_string(checked) + " families";
    return checked == 300;
  });

  criterion(5, "projected-sparsity product inequality", [](std::string& detail) {
    Rng rng(31337);
    const u32 n = 4;
    int checked = 0;
    for (int iter = 0; iter < 500; ++iter) {
      SparsePoly P = random_poly(rng, n, 8, 3);
      const u32 k = 2 + u32(rng.uniform(3));
      std::vector<std::set<u32>> parts(k);
      for (u32 v = 1; v <= n; ++v) {
        const u64 slot = rng.uniform(k + 1);
        if (slot < k) parts[slot].insert(v);
      }
      mpz_class lhs;
      mpz_ui_pow_ui(lhs.get_mpz_t(), sparsity(P), k - 1);
      mpz_class rhs = 1;
      for (const auto& A : parts) rhs *= projected_sparsity(P, A);
      if (lhs > rhs) {
        detail = "violated at iteration " + std::to_string(iter);
        return false;
      }
      ++checked;
    }
    detail = std::to_string(checked) + " instances exact";
    return checked == 500;
  });

  criterion(6, "gate sparsity bound on planted zero circuits", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    int passed = 0;
    for (int i = 0; i < 100; ++i) {
      const u32 r = 1 + u32(i % 2);
      const u32 n = r + u32(i % 2);
      UnmixedCircuit planted = random_zero_circuit(r, std::min<u32>(n, 3), 5000 + u64(i));
      UnmixedCircuit C = simplify(planted).simplified;
      AuditReport rep = sparsity_audit(C);
      if (!rep.zero || !rep.pseudo_simple || !rep.minimal) {
        detail = "instance " + std::to_string(i) + " lost the hypothesis";
        return false;
      }
      u64 max_sp = 0;
      for (u64 s : rep.gate_sparsities) max_sp = std::max(max_sp, s);
      if (!(mpz_class(max_sp) <= rep.bound) || !rep.pass) {
        detail = "bound violated at instance " + std::to_string(i);
        return false;
      }
      ++passed;
    }
    // base case: simplifying x1 - x1 leaves c - c with unit sparsities
    UnmixedCircuit base = simplify(parse_circuit(
        "vars 1\nfield 101\nterm 1 (x1: 0,1)\nterm 100 (x1: 0,1)\n")).simplified;
    AuditReport rep = sparsity_audit(base);
    if (!(rep.zero && rep.pseudo_simple && rep.minimal &&
          rep.gate_sparsities == std::vector<u64>{1, 1} && rep.pass))
      return false;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = std::to_string(passed) + "/100 within bound";
    return passed == 100 && secs < 60.0;
  });

  criterion(7, "generator soundness at desk scale", [](std::string& detail) {
    // exhaustive: 2-variate, individual degree <= 1, coefficients {0,1,2}
    LGenerator L = l_generator(2, 4, 1, F);
    std::span<const SparsePoly> coords(L.map.coords());
    int nonzero_family = 0, total = 0;
    for (u64 c00 = 0; c00 < 3; ++c00)
      for (u64 c10 = 0; c10 < 3; ++c10)
        for (u64 c01 = 0; c01 < 3; ++c01)
          for (u64 c11 = 0; c11 < 3; ++c11) {
            std::vector<Term> terms{{Monomial::one(), c00},
                                    {Monomial::var(1), c10},
                                    {Monomial::var(2), c01},
                                    {Monomial({{1, 1}, {2, 1}}), c11}};
            SparsePoly P = SparsePoly::from_terms(2, F, std::move(terms));
            if (P.is_zero()) continue;
            ++total;
            if (!compose(P, coords).is_zero()) ++nonzero_family;
          }
    if (total != 80 || nonzero_family != 80) {
      detail = std::to_string(nonzero_family) + "/" + std::to_string(total);
      return false;
    }
    // 50 nonzero circuits against the layered generator at reduced m
    int nonzero_circuits = 0;
    u64 seed = 0;
    while (nonzero_circuits < 50 && seed < 500) {
      RandomCircuitParams params;
      params.n = 1 + u32(seed % 2);
      params.k = 1 + u32(seed % 2);
      UnmixedCircuit C = random_unmixed_circuit(params, 9000 + seed++);
      if (brute_force_is_zero(C)) continue;
      SGenerator S =
          s_generator(C.gate_count(), 4, C.var_count(), std::max<u64>(1, C.degree_cap()), F);
      if (compose_circuit_with_generator(C, S).is_zero()) {
        detail = "composition vanished at seed " + std::to_string(seed - 1);
        return false;
      }
      ++nonzero_circuits;
    }
    detail = "80/80 sparse family, " + std::to_string(nonzero_circuits) + "/50 circuits";
    return nonzero_circuits == 50;
  });

  criterion(8, "hitting set size formula", [](std::string& detail) {
    struct Case {
      const char* text;
      std::optional<u64> u_override;
    };
    const Case cases[] = {
        {"vars 1\nfield 2305843009213693951\nterm 1 (x1: 0,1)\n", std::nullopt},
        {"vars 2\nfield 2305843009213693951\nterm 1 (x1: 1,1) (x2: 1,1)\n", std::nullopt},
        {"vars 2\nfield 2305843009213693951\nterm 1 (x1: 1,1) (x2: 1,1)\nterm 5 (x1: 0,1)\n",
         u64(3)},
    };
    for (const auto& c : cases) {
      UnmixedCircuit C = parse_circuit(c.text);
      PitOverrides ov;
      ov.u_size = c.u_override;
      HittingSet H = build_hitting_set(C, ov);
      const u64 u = c.u_override ? *c.u_override
                                 : u64(C.var_count()) * C.var_count() * C.var_count() + 1;
      if (!c.u_override && H.meta().u_size != u) return false;  // |U| = n^3 + 1
      const mpz_class expect = mpow(u, u64(H.meta().q + 1) * C.gate_count());
      u64 emitted = 0;
      H.source().visit(0, H.size(), [&](u64, std::span<const u64>) {
        ++emitted;
        return true;
      });
      if (mpz_class(emitted) != expect || H.meta().cardinality != expect) {
        detail = "count mismatch";
        return false;
      }
    }
    detail = "3 parameter triples exact";
    return true;
  });

  criterion(9, "parser round-trip and the expansion identity", [](std::string& detail) {
    for (u64 seed = 0; seed < 1000; ++seed) {
      RandomCircuitParams params;
      params.n = 1 + u32(seed % 3);
      params.k = 1 + u32(seed % 4);
      params.zero_fraction = (seed % 7 == 0) ? 1.0 : 0.0;
      UnmixedCircuit C = random_unmixed_circuit(params, seed);
      const std::string s1 = serialize_circuit(C);
      const std::string s2 = serialize_circuit(parse_circuit(s1));
      if (s1 != s2) {
        detail = "round trip moved at seed " + std::to_string(seed);
        return false;
      }
    }
    UnmixedCircuit K = parse_circuit(kIdentityFile);
    if (!brute_force_is_zero(K)) return false;
    detail = "1000 fixed points; identity certified ZERO";
    return true;
  });

  criterion(10, "theorem-grade runs are gated, not faked", [](std::string& detail) {
    // infeasible defaults refuse loudly and point at the overrides
    UnmixedCircuit C = parse_circuit(
        "vars 3\nfield 2305843009213693951\nterm 1 (x1: 1,1) (x2: 1,1)\nterm 5 (x3: 0,1)\n");
    bool refused = false;
    try {
      build_hitting_set(C);
    } catch (const ResourceError& e) {
      refused = std::string(e.what()).find("override") != std::string::npos;
    }
    if (!refused) {
      detail = "defaults were not gated";
      return false;
    }
    // overrides always taint
    PitOverrides ov;
    ov.u_size = 3;
    if (build_hitting_set(C, ov).meta().certified) {
      detail = "override kept the certified tag";
      return false;
    }
    // and the distinction is documented
    std::ifstream readme(std::string(UPIT_SOURCE_DIR) + "/README.md");
    std::stringstream buf;
    buf << readme.rdbuf();
    const std::string text = buf.str();
    if (text.find("CERTIFIED") == std::string::npos ||
        text.find("EXPERIMENTAL") == std::string::npos) {
      detail = "README does not document the tags";
      return false;
    }
    detail = "gated, tainted, documented";
    return true;
  });

  std::cout << (failures == 0 ? "all criteria passed\n"
                              : std::to_string(failures) + " criteria failed\n");
  return failures == 0 ? 0 : 1;
}
