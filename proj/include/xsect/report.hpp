#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "xsect/dyadic_set.hpp"
#include "xsect/feasibility.hpp"
#include "xsect/step_function.hpp"
#include "xsect/trace.hpp"

namespace xsect {

/// Exact ||f - v_E||_1. Throws GridMismatch when f is not constant on the
/// 2^-(N+K) grid of E.
Dyadic residual(const DyadicSet& e, const StepFunction& f);

/// Whether int_0^t f* <= int_0^t v* for every t in [0,1].
bool rearrangement_dominated(const StepFunction& f, const StepFunction& v);

struct AuditViolation {
  std::size_t record;     // index into the trace
  std::string invariant;  // which check failed
  std::string detail;
};

struct AuditResult {
  std::optional<AuditViolation> violation;
  std::size_t records_checked = 0;

  bool passed() const { return !violation.has_value(); }
};

/// Replays a trace from the hypograph of g and re-derives, for every swap,
/// the horizontal-section and measure invariance, the per-column mass
/// accounting, the L1 drop equal to |A Δ A'|, the per-column monotone
/// relation between f, v_A and v_A', and the majorization of f by v_A'.
/// Returns the first record that breaks any of them.
AuditResult audit_trace(const Trace& trace, const StepFunction& f, const StepFunction& g,
                        GridParams params);

nlohmann::json to_json(const FeasibilityReport& report);
nlohmann::json to_json(const TraceSummary& summary);

void write_text(std::ostream& os, const FeasibilityReport& report);
void write_text(std::ostream& os, const TraceSummary& summary);

}  // namespace xsect
