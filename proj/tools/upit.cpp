// upit: deterministic black-box identity testing for unmixed depth-4
// circuits, plus the supporting oracles and generators.
//
// Exit codes: 0 = ZERO (or subcommand success), 1 = NONZERO, 2 = error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "upit/circfmt.hpp"
#include "upit/oracles.hpp"
#include "upit/sgen.hpp"

namespace {

using namespace upit;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

struct CommonOpts {
  std::string input;
  std::string out;
  std::optional<u64> field;
  std::optional<u64> m_override;
  std::optional<u64> u_size;
  u64 budget_terms = kDefaultTermBudget;
  u32 jobs = 1;
  u64 seed = 1;
  u32 trials = 20;
};

u64 expansion_estimate(const UnmixedCircuit& C) {
  u64 total = 0;
  for (const auto& g : C.gates()) {
    u64 t = 1;
    for (const auto& [v, f] : g.factors()) {
      u64 nz = 0;
      for (u64 c : f.coeffs())
        if (c) ++nz;
      if (t > UINT64_MAX / std::max<u64>(nz, 1)) return UINT64_MAX;
      t *= std::max<u64>(nz, 1);
    }
    total += t;
    if (total < t) return UINT64_MAX;
  }
  return total;
}

int run_check(const CommonOpts& o, std::string method) {
  UnmixedCircuit C = parse_circuit(read_file(o.input), o.field);
  if (method == "auto")
    method = expansion_estimate(C) <= o.budget_terms ? "bruteforce" : "sz";

  const auto t0 = std::chrono::steady_clock::now();
  bool zero = false;
  std::vector<u64> witness;
  bool certified = false;

  if (method == "bruteforce") {
    zero = brute_force_is_zero(C, o.budget_terms);
    certified = true;
    if (!zero) {
      // Exhibit a concrete witness for the report.
      for (u64 s = 0; witness.empty(); ++s) {
        if (!schwartz_zippel_is_zero(C, 1, s)) {
          Rng rng(s);
          witness.resize(C.var_count());
          for (auto& x : witness) x = rng.field_element(C.field());
        }
      }
    }
  } else if (method == "sz") {
    Rng rng(o.seed);
    zero = true;
    std::vector<u64> point(C.var_count());
    for (u32 t = 0; t < o.trials && zero; ++t) {
      for (auto& x : point) x = rng.field_element(C.field());
      if (evaluate_circuit(C, point) != 0) {
        zero = false;
        witness = point;
      }
    }
    certified = !zero;  // a verified witness is exact; ZERO is one-sided
  } else if (method == "hitting-set") {
    PitOverrides ov{o.m_override, o.u_size};
    PitBudgets budgets;
    budgets.terms = o.budget_terms;
    HittingSet H = build_hitting_set(C, ov, budgets);
    PitResult r = black_box_pit(C, H, o.jobs);
    zero = r.is_zero;
    witness = r.witness;
    certified = r.certified;
  } else {
    throw std::runtime_error("unknown method " + method);
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

  std::cout << "method " << method << "\n";
  std::cout << "verdict " << (zero ? "ZERO" : "NONZERO") << "\n";
  if (!witness.empty()) {
    std::cout << "witness";
    for (u64 x : witness) std::cout << ' ' << x;
    std::cout << "\n";
  }
  std::cout << "tag " << (certified ? "CERTIFIED" : "EXPERIMENTAL") << "\n";
  std::cout << "time_ms " << ms << "\n";
  return zero ? 0 : 1;
}

int run_hitting_set(const CommonOpts& o, const std::string& dump_generator) {
  UnmixedCircuit C = parse_circuit(read_file(o.input), o.field);
  PitOverrides ov{o.m_override, o.u_size};
  PitBudgets budgets;
  budgets.terms = o.budget_terms;
  HittingSet H = build_hitting_set(C, ov, budgets);
  if (!dump_generator.empty()) {
    SGenOptions opts;
    opts.t_count_override = o.m_override;
    opts.term_budget = o.budget_terms;
    SGenerator S = s_generator(C.gate_count(), H.meta().sparsity_bound,
                               C.var_count(), std::max<u64>(1, C.degree_cap()),
                               C.field(), opts);
    std::ofstream gen(dump_generator, std::ios::binary);
    if (!gen) throw std::runtime_error("cannot write " + dump_generator);
    gen << map_to_text(S.coords());
  }
  std::ofstream file;
  std::ostream& rows = open_output(file, o.out);
  H.write_csv(rows);
  std::cout << "tag " << (H.meta().certified ? "CERTIFIED" : "EXPERIMENTAL") << "\n";
  std::cout << "q " << H.meta().q << "\n";
  std::cout << "u " << H.meta().u_size << "\n";
  std::cout << "count " << H.meta().cardinality.get_str() << "\n";
  return 0;
}

int run_random(const CommonOpts& o, const RandomCircuitParams& params) {
  UnmixedCircuit C = random_unmixed_circuit(params, o.seed);
  std::ofstream file;
  std::ostream& out = open_output(file, o.out);
  out << serialize_circuit(C);
  return 0;
}

int run_audit(const CommonOpts& o, const std::vector<std::string>& files,
              u32 planted, u32 r, u32 n) {
  std::ofstream file;
  std::ostream& out = open_output(file, o.out);
  bool all_pass = true;
  auto report = [&](const UnmixedCircuit& C) {
    AuditReport rep = sparsity_audit(C, o.budget_terms);
    out << audit_tsv_line(rep) << "\n";
    all_pass = all_pass && rep.pass;
  };
  for (const auto& path : files) report(parse_circuit(read_file(path), o.field));
  for (u32 i = 0; i < planted; ++i) {
    UnmixedCircuit C = random_zero_circuit(r, n, o.seed + i);
    report(simplify(C).simplified);
  }
  if (!all_pass) {
    std::cerr << "sparsity bound violated: this falsifies the audited theorem\n";
    return 2;
  }
  return 0;
}

int run_compose(const CommonOpts& o) {
  UnmixedCircuit C = parse_circuit(read_file(o.input), o.field);
  mpz_class m;
  if (o.m_override) {
    m = mpz_class(static_cast<unsigned long>(*o.m_override));
  } else {
    const u64 s = circuit_size(C);
    const u32 k = C.gate_count();
    mpz_ui_pow_ui(m.get_mpz_t(), s, 5 * u64(k) * k + 2);
  }
  SGenOptions opts;
  opts.t_count_override = o.m_override;
  opts.term_budget = o.budget_terms;
  SGenerator S = s_generator(C.gate_count(), m, C.var_count(),
                             std::max<u64>(1, C.degree_cap()), C.field(), opts);
  SparsePoly P = compose_circuit_with_generator(C, S, o.budget_terms);
  std::cout << "seed_vars " << S.seed_arity() << "\n";
  std::cout << "terms " << P.term_count() << "\n";
  std::cout << "total_degree " << P.total_degree() << "\n";
  std::cout << "individual_degrees";
  for (u32 v = 1; v <= S.seed_arity(); ++v) std::cout << ' ' << P.degree_in(v);
  std::cout << "\n";
  std::cout << "zero " << (P.is_zero() ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"black-box identity testing for low-degree unmixed circuits"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string method = "auto";
  std::string dump_generator;
  std::vector<std::string> audit_files;
  u32 planted = 0, planted_r = 1, planted_n = 2;
  RandomCircuitParams params;

  auto add_common = [&](CLI::App* cmd, bool with_input) {
    if (with_input)
      cmd->add_option("file", o.input, "circuit file (.upc)")->required();
    cmd->add_option("--field", o.field, "modulus override (must match the file)");
    cmd->add_option("--m-override", o.m_override,
                    "sparsity parameter override (EXPERIMENTAL)");
    cmd->add_option("--u-size", o.u_size, "|U| override (EXPERIMENTAL)");
    cmd->add_option("--budget-terms", o.budget_terms, "symbolic term budget");
    cmd->add_option("--jobs", o.jobs, "worker threads for hitting-set scans");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--trials", o.trials, "Schwartz-Zippel trials");
    cmd->add_option("--out", o.out, "write primary output to a file");
  };

  CLI::App* check = app.add_subcommand("check", "test a circuit for identity zero");
  add_common(check, true);
  check->add_option("--method", method, "bruteforce | sz | hitting-set | auto");

  CLI::App* hs = app.add_subcommand("hitting-set", "emit the hitting set as CSV");
  add_common(hs, true);
  hs->add_option("--dump-generator", dump_generator, "also write the generator map");

  CLI::App* rnd = app.add_subcommand("random", "emit a random circuit");
  add_common(rnd, false);
  rnd->add_option("--n", params.n, "variable count");
  rnd->add_option("--k", params.k, "gate count");
  rnd->add_option("--max-factor-degree", params.max_factor_degree, "factor degree cap");
  rnd->add_option("--density", params.factor_density, "factor density in [0,1]");
  rnd->add_option("--zero-fraction", params.zero_fraction, "planted zero probability");

  CLI::App* audit = app.add_subcommand("audit-sparsity",
                                       "audit the gate sparsity bound (TSV report)");
  add_common(audit, false);
  audit->add_option("files", audit_files, "circuit files to audit");
  audit->add_option("--planted", planted, "audit this many planted zero circuits");
  audit->add_option("--r", planted_r, "planted factor pairs");
  audit->add_option("--n", planted_n, "planted variable count");

  CLI::App* comp = app.add_subcommand("compose",
                                      "compose the circuit with its generator");
  add_common(comp, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(o, method);
    if (hs->parsed()) return run_hitting_set(o, dump_generator);
    if (rnd->parsed()) return run_random(o, params);
    if (audit->parsed()) return run_audit(o, audit_files, planted, planted_r, planted_n);
    if (comp->parsed()) return run_compose(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
