#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "xsect/feasibility.hpp"

namespace xsect {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Margins or marginals failed a realizability test; carries the certificate.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(FeasibilityReport report)
      : Error("infeasible input: " + to_string(report.verdict)), report_(std::move(report)) {}
  const FeasibilityReport& report() const { return report_; }

 private:
  FeasibilityReport report_;
};

struct InstanceTooLarge : Error {
  using Error::Error;
};

/// Input not on the dyadic grid a construction requires.
struct QuantizationError : Error {
  using Error::Error;
};

struct GridMismatch : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct NegativeValue : ParseError {
  using ParseError::ParseError;
};

struct MalformedTrace : Error {
  using Error::Error;
};

}  // namespace xsect
