#pragma once

#include <iosfwd>

#include "xsect/dyadic_set.hpp"
#include "xsect/step_function.hpp"

namespace xsect {

/// Overlay of f, its nonincreasing rearrangement f* and its distribution
/// function lambda_f on shared axes.
void write_marginal_svg(std::ostream& os, const StepFunction& f);

/// The set drawn as filled rectangles in the unit square (y up).
void write_set_svg(std::ostream& os, const DyadicSet& e);

}  // namespace xsect
