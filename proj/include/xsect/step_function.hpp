#pragma once

#include <span>
#include <vector>

#include "xsect/dyadic_number.hpp"

namespace xsect {

/// Nonnegative right-continuous step function on [0,1] with dyadic breakpoints.
///
/// `values()[i]` is held on `[breakpoints()[i], breakpoints()[i+1])`. The
/// representation is canonical: adjacent plateaus with equal values are
/// merged, so two functions are equal iff their representations are.
class StepFunction {
 public:
  /// The zero function.
  StepFunction();

  /// Throws std::invalid_argument unless breakpoints strictly increase from 0
  /// to 1, there is one value per interval and all values are nonnegative.
  StepFunction(std::vector<Dyadic> breakpoints, std::vector<Dyadic> values);

  static StepFunction constant(const Dyadic& value);

  /// `values.size()` must be `2^log2_pieces`; piece `i` covers
  /// `[i 2^-log2_pieces, (i+1) 2^-log2_pieces)`.
  static StepFunction uniform(std::span<const Dyadic> values, int log2_pieces);

  const std::vector<Dyadic>& breakpoints() const { return breakpoints_; }
  const std::vector<Dyadic>& values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }
  Dyadic length(std::size_t piece) const { return breakpoints_[piece + 1] - breakpoints_[piece]; }

  /// Value at x in [0,1); f(1) is taken as the last plateau.
  Dyadic operator()(const Dyadic& x) const;

  Dyadic integral() const;
  Dyadic max_value() const;

  /// True when every breakpoint is a multiple of 2^-log2_width, i.e. the
  /// function is constant on each dyadic interval of that width.
  bool constant_on_grid(int log2_width) const;

  /// Values sampled on the uniform grid of width 2^-log2_width (requires
  /// `constant_on_grid(log2_width)`).
  std::vector<Dyadic> sample(int log2_width) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<Dyadic> breakpoints_;
  std::vector<Dyadic> values_;
};

/// Measure of the strict super-level set `{x in [0,1] : f(x) > s}`.
Dyadic distribution(const StepFunction& f, const Dyadic& s);

/// Nonincreasing rearrangement f* restricted to [0,1].
StepFunction rearrange(const StepFunction& f);

/// f*(t) for t >= 0 (zero beyond 1).
Dyadic rearranged_value(const StepFunction& f, const Dyadic& t);

/// Integral of f* over [0,t]; t is clamped to [0,1].
Dyadic primitive_rearr(const StepFunction& f, const Dyadic& t);

/// Integral of the distribution function of g over [0,t], t >= 0.
///
/// Uses the layer-cake identity: the result equals the integral of min(g, t).
Dyadic primitive_dist(const StepFunction& g, const Dyadic& t);

/// `t -> primitive_rearr(f, t)` with the sort done once.
class RearrPrimitive {
 public:
  explicit RearrPrimitive(const StepFunction& f);
  Dyadic operator()(const Dyadic& t) const;
  /// Kinks in [0,1], ascending, including 0.
  const std::vector<Dyadic>& kinks() const { return cum_length_; }

 private:
  std::vector<Dyadic> cum_length_;
  std::vector<Dyadic> cum_integral_;
  std::vector<Dyadic> values_;
};

/// `t -> primitive_dist(g, t)` with the sort done once.
class DistPrimitive {
 public:
  explicit DistPrimitive(const StepFunction& g);
  Dyadic operator()(const Dyadic& t) const;
  /// 0 followed by the distinct values of g, ascending.
  const std::vector<Dyadic>& kinks() const { return kinks_; }

 private:
  std::vector<Dyadic> kinks_;
  std::vector<Dyadic> below_integral_;  // integral of g over {g <= kinks_[i]}
  std::vector<Dyadic> above_measure_;   // measure of {g > kinks_[i]}
};

/// Breakpoints in [0,1] of `t -> primitive_rearr(f, t)`, ascending, including 0.
std::vector<Dyadic> rearr_kinks(const StepFunction& f);

/// Breakpoints of `t -> primitive_dist(g, t)`: 0 and the distinct values of g.
std::vector<Dyadic> dist_kinks(const StepFunction& g);

/// L1 distance between two step functions.
Dyadic l1_distance(const StepFunction& a, const StepFunction& b);

}  // namespace xsect
