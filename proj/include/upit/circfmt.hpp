#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "upit/circuit.hpp"

namespace upit {

// Parse failure with a 1-based source position.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Line-oriented circuit format (.upc):
//
//   vars <n>
//   field <p>
//   degcap <D>          # optional; defaults to n
//   term <beta> (x<i>: <c0>,<c1>,...,<cd>) ...
//
// '#' starts a comment, blank lines are ignored. Each factor group is the
// univariate c0 + c1*x_i + ... + cd*x_i^d with cd nonzero mod p; parsing
// applies monic normalization (leading coefficients fold into beta). A term
// with no groups is the constant beta. Negative literals are not accepted;
// write p-1 for -1.
UnmixedCircuit parse_circuit(std::string_view text,
                             std::optional<u64> field_override = std::nullopt);

// Canonical emission: headers, then gates in order with factors by ascending
// variable. serialize(parse(serialize(C))) == serialize(C).
std::string serialize_circuit(const UnmixedCircuit& C);

}  // namespace upit
