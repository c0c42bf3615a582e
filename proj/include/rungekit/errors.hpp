#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rungekit {

// Failure of a mathematical invariant the library promises to maintain
// (non-integral divisor pushdown, rank deficiency, violated Runge condition).
// Distinct from std::invalid_argument, which signals malformed caller input;
// the CLI maps the two to exit codes 1 and 2 respectively.  `witness` carries
// an optional machine-readable JSON fragment describing the failure.
class InvariantError : public std::runtime_error {
public:
  explicit InvariantError(const std::string& what, std::string witness_json = "")
      : std::runtime_error(what), witness(std::move(witness_json)) {}

  std::string witness;
};

} // namespace rungekit
