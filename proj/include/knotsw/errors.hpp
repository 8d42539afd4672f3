#pragma once

#include <stdexcept>
#include <string>

namespace knotsw {

// Base class for everything thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent input text (diagrams, polynomials, scripts).
struct parse_error : error {
  using error::error;
};

// Operands over mismatched variable sets, invalid indices, bad arguments.
struct domain_error : error {
  using error::error;
};

// A theorem hypothesis flag required by an operation is missing or false.
struct hypothesis_error : error {
  using error::error;
};

// An exact identity the engine relies on failed to hold (non-exact
// division, symmetry violation, complexity descent failure).
struct identity_error : error {
  using error::error;
};

// Non-exact division; carries the rendered remainder for diagnostics.
struct division_error : identity_error {
  division_error(const std::string& msg, std::string remainder_text)
      : identity_error(msg + " (remainder: " + remainder_text + ")"),
        remainder(std::move(remainder_text)) {}
  std::string remainder;
};

}  // namespace knotsw
