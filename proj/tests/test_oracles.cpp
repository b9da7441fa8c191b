#include <doctest.h>

#include "upit/circfmt.hpp"
#include "upit/oracles.hpp"

using namespace upit;

namespace {

UnmixedCircuit from_text(const std::string& text) { return parse_circuit(text); }

const char* kIdentityFile =
    "vars 2\n"
    "field 101\n"
    "term 1 (x1: 1,1) (x2: 1,1)\n"
    "term 100 (x1: 0,1) (x2: 0,1)\n"
    "term 100 (x1: 0,1)\n"
    "term 100 (x2: 0,1)\n"
    "term 100\n";

}  // namespace

TEST_CASE("brute force oracle") {
  CHECK(brute_force_is_zero(from_text("vars 1\nfield 101\nterm 1 (x1: 0,1)\nterm 100 (x1: 0,1)\n")));
  CHECK_FALSE(brute_force_is_zero(from_text("vars 2\nfield 101\nterm 1 (x1: 0,1)\nterm 1 (x2: 0,1)\n")));
  CHECK(brute_force_is_zero(from_text(kIdentityFile)));
}

TEST_CASE("Schwartz-Zippel oracle") {
  UnmixedCircuit zero = from_text(kIdentityFile);
  for (u64 seed : {1ull, 2ull, 99ull}) CHECK(schwartz_zippel_is_zero(zero, 5, seed));

  UnmixedCircuit x1 = from_text("vars 1\nfield 2305843009213693951\nterm 1 (x1: 0,1)\n");
  CHECK_FALSE(schwartz_zippel_is_zero(x1, 20, 7));
  CHECK_THROWS_AS(schwartz_zippel_is_zero(x1, 0, 7), std::invalid_argument);
}

TEST_CASE("oracles agree on random circuits") {
  int zeros = 0;
  for (u64 seed = 0; seed < 500; ++seed) {
    RandomCircuitParams params;
    params.n = 1 + u32(seed % 3);
    params.k = Rng(seed).uniform(3) + 1;
    params.zero_fraction = 0.25;
    UnmixedCircuit C = random_unmixed_circuit(params, seed);
    const bool bf = brute_force_is_zero(C);
    CHECK(bf == schwartz_zippel_is_zero(C, 20, seed ^ 0x5eed));
    zeros += bf;
  }
  CHECK(zeros > 60);  // the planted fraction actually shows up
}

TEST_CASE("random circuits are reproducible and respect parameters") {
  RandomCircuitParams params;
  params.n = 2;
  params.k = 3;
  UnmixedCircuit a = random_unmixed_circuit(params, 42);
  UnmixedCircuit b = random_unmixed_circuit(params, 42);
  CHECK(serialize_circuit(a) == serialize_circuit(b));
  CHECK(a.gate_count() == 3);
  CHECK(a.var_count() == 2);

  params.zero_fraction = 1.0;
  for (u64 seed = 0; seed < 40; ++seed)
    CHECK(brute_force_is_zero(random_unmixed_circuit(params, seed)));

  params.zero_fraction = 0.0;
  int zero_count = 0;
  for (u64 seed = 0; seed < 1000; ++seed)
    zero_count += brute_force_is_zero(random_unmixed_circuit(params, seed));
  CHECK(zero_count == 0);
}

TEST_CASE("planted zero circuits") {
  UnmixedCircuit c1 = random_zero_circuit(1, 1, 5);
  CHECK(c1.gate_count() == 3);
  CHECK(brute_force_is_zero(c1));

  UnmixedCircuit c2 = random_zero_circuit(2, 3, 5);
  CHECK(c2.gate_count() == 5);
  CHECK(c2.var_count() == 3);
  CHECK(brute_force_is_zero(c2));

  CHECK(serialize_circuit(random_zero_circuit(2, 2, 9)) ==
        serialize_circuit(random_zero_circuit(2, 2, 9)));
  CHECK_THROWS_AS(random_zero_circuit(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_zero_circuit(3, 2, 1), std::invalid_argument);
}

TEST_CASE("audit: hypothesis fails vacuously on x1 - x1") {
  UnmixedCircuit C = from_text("vars 1\nfield 101\nterm 1 (x1: 0,1)\nterm 100 (x1: 0,1)\n");
  AuditReport r = sparsity_audit(C);
  CHECK(r.zero);
  CHECK_FALSE(r.pseudo_simple);  // x1 is common to both gates
  CHECK(r.minimal);
  CHECK(r.pass);
}

TEST_CASE("audit: the simplified base case c - c") {
  UnmixedCircuit C = from_text("vars 1\nfield 101\nterm 1 (x1: 0,1)\nterm 100 (x1: 0,1)\n");
  UnmixedCircuit simplified = simplify(C).simplified;
  AuditReport r = sparsity_audit(simplified);
  CHECK(r.zero);
  CHECK(r.pseudo_simple);
  CHECK(r.minimal);
  CHECK(r.gate_sparsities == std::vector<u64>{1, 1});
  CHECK(r.s == 2);
  CHECK(r.bound == mpz_class(1) << 20);  // 2^(5*2^2)
  CHECK(r.pass);
}

TEST_CASE("audit over planted instances after simplification") {
  for (u64 seed = 0; seed < 30; ++seed) {
    const u32 r = 1 + u32(seed % 2);
    const u32 n = r + u32(seed % 2);
    UnmixedCircuit C = random_zero_circuit(r, n, seed);
    AuditReport rep = sparsity_audit(simplify(C).simplified);
    CHECK(rep.zero);
    CHECK(rep.pass);
    // the invariant that defines pass
    u64 max_sp = 0;
    for (u64 s : rep.gate_sparsities) max_sp = std::max(max_sp, s);
    CHECK(rep.pass == (!(rep.zero && rep.pseudo_simple && rep.minimal) ||
                       mpz_class(max_sp) <= rep.bound));
  }
}

TEST_CASE("audit TSV layout") {
  UnmixedCircuit C = from_text("vars 1\nfield 101\nterm 1 (x1: 0,1)\nterm 100 (x1: 0,1)\n");
  AuditReport r = sparsity_audit(C);
  const std::string line = audit_tsv_line(r);
  CHECK(line == "1,1\t1048576\tfalse\ttrue\ttrue\ttrue");
}
