#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bidomain {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller handed us arguments that violate a documented precondition
// (negative mode index, mismatched vector lengths, ...).
struct InputError : Error {
  using Error::Error;
};

// The data itself is inadmissible: geometry that cannot exist, nonpositive
// conductivity, incompatible sources, a field that is not conjugate
// symmetric when a real one is required.
struct ValidationError : Error {
  using Error::Error;
};

// A computation failed numerically (singular system, blow-up, non-finite
// values). Not a usage problem.
struct NumericalError : Error {
  using Error::Error;
};

// Time integration exceeded the blow-up threshold or produced non-finite
// coefficients; carries the time at which it happened.
struct BlowupError : NumericalError {
  double t;
  BlowupError(const std::string& what, double t_) : NumericalError(what), t(t_) {}
};

// Configuration file problems. Collects every issue found, not just the
// first, so a user can fix a config in one pass.
struct ConfigError : Error {
  std::vector<std::string> issues;

  explicit ConfigError(std::vector<std::string> iss)
      : Error(join(iss)), issues(std::move(iss)) {}

 private:
  static std::string join(const std::vector<std::string>& iss) {
    std::string out = "configuration invalid:";
    for (const auto& s : iss) {
      out += "\n  - ";
      out += s;
    }
    return out;
  }
};

}  // namespace bidomain
