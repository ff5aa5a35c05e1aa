#pragma once

#include <optional>

#include "xsect/dyadic_set.hpp"
#include "xsect/step_function.hpp"
#include "xsect/trace.hpp"

namespace xsect {

struct OptimizedGeneration {
  DyadicSet set;
  Trace swaps;
};

/// Exhaustive swapping at generation n: scan (i, j, k) lexicographically,
/// apply the first swappable move, rescan, stop when a scan finds nothing.
OptimizedGeneration optimize_generation_traced(const DyadicSet& e, const StepFunction& f, int n);

inline DyadicSet optimize_generation(const DyadicSet& e, const StepFunction& f, int n) {
  return optimize_generation_traced(e, f, n).set;
}

struct Reconstruction {
  DyadicSet set;
  TraceSummary summary;
  Trace trace;
};

/// Starts from the hypograph of g and runs generations 1..N to exhaustion.
///
/// The horizontal section stays equal to g throughout; the residual
/// ||f - v||_1 never increases. Throws QuantizationError when f or g is off
/// the grid and InfeasibleError when check_hlp(f, g) fails.
Reconstruction reconstruct(const StepFunction& f, const StepFunction& g, GridParams params);

/// Exact realization through the discrete constructor when f and g take
/// values in multiples of 2^-N (whole cells). Returns nullopt when the
/// marginals are not on that grid; throws InfeasibleError when they are but
/// no (0,1)-matrix exists.
std::optional<DyadicSet> realize_exact(const StepFunction& f, const StepFunction& g, GridParams params);

}  // namespace xsect
