#pragma once

#include <stdexcept>
#include <string>

namespace bpx {

// Exact division hit a nonzero remainder at some q-degree.
struct NonDivisibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation needs Fourier/enumeration data beyond the configured
// truncation.  Carries the bound the caller must re-enumerate to.
struct BudgetError : std::runtime_error {
  long needed_norm;  // vector norm (x,x) the enumeration must reach; 0 if n/a
  std::string needed_class;
  BudgetError(const std::string& what, long norm = 0, std::string cls = "")
      : std::runtime_error(what), needed_norm(norm), needed_class(std::move(cls)) {}
};

// Bad user/config input (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A series left the exponent grid it was declared on (would produce
// irrational phases in a fractional-tau substitution).
struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bpx
