#include "upit/circfmt.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace upit {

namespace {

// Single-line scanner with 1-based column reporting.
struct Cursor {
  std::string_view s;
  int line;
  size_t pos = 0;

  int col() const { return int(pos) + 1; }
  bool eol() {
    skip_ws();
    return pos >= s.size();
  }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  void expect(char c, const char* what) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      throw ParseError(std::string("expected '") + c + "' " + what, line, col());
    ++pos;
  }
  u64 integer(const char* what) {
    skip_ws();
    const int start = col();
    if (pos < s.size() && s[pos] == '-')
      throw ParseError(std::string("negative literals are not allowed in ") +
                           what + " (write p-1 for -1)",
                       line, start);
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw ParseError(std::string("expected integer ") + what, line, start);
    u64 v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      const u64 digit = u64(s[pos] - '0');
      if (v > (UINT64_MAX - digit) / 10)
        throw ParseError(std::string("integer overflow in ") + what, line, start);
      v = v * 10 + digit;
      ++pos;
    }
    return v;
  }
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')')
      ++pos;
    return std::string(s.substr(start, pos - start));
  }
};

struct RawFactor {
  u32 var;
  std::vector<u64> coeffs;
  int col;
};

struct RawTerm {
  u64 beta;
  std::vector<RawFactor> factors;
  int line;
};

}  // namespace

UnmixedCircuit parse_circuit(std::string_view text, std::optional<u64> field_override) {
  std::optional<u32> n;
  std::optional<u64> p;
  std::optional<u64> degcap;
  std::vector<RawTerm> raw_terms;
  int last_line = 0;
  int field_line = 0;

  std::istringstream stream{std::string(text)};
  std::string line_buf;
  for (int line_no = 1; std::getline(stream, line_buf); ++line_no) {
    last_line = line_no;
    if (auto hash = line_buf.find('#'); hash != std::string::npos)
      line_buf.erase(hash);
    Cursor cur{line_buf, line_no};
    if (cur.eol()) continue;

    const int kw_col = cur.col();
    const std::string kw = cur.word();
    if (kw == "vars") {
      if (n) throw ParseError("duplicate 'vars' header", line_no, kw_col);
      if (!raw_terms.empty())
        throw ParseError("'vars' header after a term line", line_no, kw_col);
      const u64 v = cur.integer("after 'vars'");
      if (v == 0 || v > 1'000'000)
        throw ParseError("vars must be in 1..10^6", line_no, kw_col);
      n = u32(v);
    } else if (kw == "field") {
      if (p) throw ParseError("duplicate 'field' header", line_no, kw_col);
      if (!raw_terms.empty())
        throw ParseError("'field' header after a term line", line_no, kw_col);
      p = cur.integer("after 'field'");
      field_line = line_no;
    } else if (kw == "degcap") {
      if (degcap) throw ParseError("duplicate 'degcap' header", line_no, kw_col);
      if (!raw_terms.empty())
        throw ParseError("'degcap' header after a term line", line_no, kw_col);
      degcap = cur.integer("after 'degcap'");
    } else if (kw == "term") {
      RawTerm t;
      t.line = line_no;
      t.beta = cur.integer("beta");
      while (cur.peek() == '(') {
        RawFactor fac;
        cur.skip_ws();
        fac.col = cur.col();
        cur.expect('(', "to open a factor group");
        cur.skip_ws();
        if (cur.pos >= cur.s.size() || cur.s[cur.pos] != 'x')
          throw ParseError("expected variable like x1", line_no, cur.col());
        ++cur.pos;
        const u64 v = cur.integer("variable index");
        if (v == 0) throw ParseError("variable indices are 1-based", line_no, fac.col);
        fac.var = u32(v);
        cur.expect(':', "after the variable");
        fac.coeffs.push_back(cur.integer("coefficient"));
        while (cur.peek() == ',') {
          cur.expect(',', "between coefficients");
          fac.coeffs.push_back(cur.integer("coefficient"));
        }
        cur.expect(')', "to close the factor group");
        t.factors.push_back(std::move(fac));
      }
      if (!cur.eol())
        throw ParseError("unexpected trailing input on term line", line_no, cur.col());
      raw_terms.push_back(std::move(t));
    } else {
      throw ParseError("unknown directive '" + kw + "'", line_no, kw_col);
    }
    if (kw != "term" && !cur.eol())
      throw ParseError("unexpected trailing input", line_no, cur.col());
  }

  if (!n) throw ParseError("missing 'vars' header", last_line + 1, 1);
  if (field_override) {
    if (p && *p != *field_override)
      throw ParseError("field " + std::to_string(*p) +
                           " conflicts with the configured modulus " +
                           std::to_string(*field_override),
                       last_line + 1, 1);
    p = *field_override;
  }
  if (!p) throw ParseError("missing 'field' header", last_line + 1, 1);
  if (raw_terms.empty())
    throw ParseError("at least one term line is required", last_line + 1, 1);

  std::optional<PrimeField> parsed_field;
  try {
    parsed_field.emplace(*p);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), field_line > 0 ? field_line : last_line + 1, 1);
  }
  const PrimeField& field = *parsed_field;
  const u64 cap = degcap.value_or(u64(*n));

  std::vector<UnmixedProduct> gates;
  gates.reserve(raw_terms.size());
  for (const auto& t : raw_terms) {
    std::vector<UnivariatePoly> factors;
    std::vector<bool> used(*n + 1, false);
    u64 term_degree = 0;
    for (const auto& fac : t.factors) {
      if (fac.var > *n)
        throw ParseError("variable x" + std::to_string(fac.var) +
                             " outside vars=" + std::to_string(*n),
                         t.line, fac.col);
      if (used[fac.var])
        throw ParseError("duplicate variable x" + std::to_string(fac.var) +
                             " in one term",
                         t.line, fac.col);
      used[fac.var] = true;
      std::vector<u64> coeffs;
      coeffs.reserve(fac.coeffs.size());
      for (u64 c : fac.coeffs) coeffs.push_back(field.reduce_uint(c));
      if (coeffs.back() == 0)
        throw ParseError("zero leading coefficient in factor for x" +
                             std::to_string(fac.var),
                         t.line, fac.col);
      term_degree += coeffs.size() - 1;
      factors.push_back(UnivariatePoly(fac.var, field, std::move(coeffs)));
    }
    if (term_degree > cap)
      throw ParseError("term degree " + std::to_string(term_degree) +
                           " exceeds degcap " + std::to_string(cap),
                       t.line, 1);
    gates.push_back(UnmixedProduct(field, field.reduce_uint(t.beta), std::move(factors)));
  }
  return UnmixedCircuit(*n, field, cap, std::move(gates));
}

std::string serialize_circuit(const UnmixedCircuit& C) {
  std::ostringstream out;
  out << "vars " << C.var_count() << "\n";
  out << "field " << C.field().modulus() << "\n";
  out << "degcap " << C.degree_cap() << "\n";
  for (const auto& g : C.gates()) {
    out << "term " << g.beta();
    for (const auto& [v, f] : g.factors()) {
      out << " (x" << v << ":";
      for (size_t i = 0; i < f.coeffs().size(); ++i)
        out << (i == 0 ? " " : ",") << f.coeffs()[i];
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace upit
