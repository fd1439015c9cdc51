#pragma once

#include <stdexcept>
#include <string>

namespace gapphaz {

// Parameter-domain violations (non-positive rates, negative times, ...) are
// reported with std::domain_error. The two types below cover the remaining
// failure classes.

/// Inconsistent or incomplete configuration: censored data without a
/// horizon, a defective model simulated without censoring, a missing
/// model parameter.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. The message names the file and row where known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_domain(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

inline void require_time(double t, const char* where) {
  if (!(t >= 0.0)) {
    throw std::domain_error(std::string(where) + ": time must be >= 0, got " + std::to_string(t));
  }
}

}  // namespace detail
}  // namespace gapphaz
