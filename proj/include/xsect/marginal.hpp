#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "xsect/dyadic_set.hpp"
#include "xsect/step_function.hpp"

namespace xsect {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "a", "a/b", or a decimal with optional exponent ("0.25", "1e-3").
/// Throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// How the knots of a marginal file are joined.
enum class Interpolation {
  step,    // value held on [b_i, b_{i+1})
  linear,  // straight line between consecutive knots
};

/// A marginal as read from disk: knots (breakpoint, value) on [0,1].
struct MarginalFile {
  struct Knot {
    Rational breakpoint;
    Rational value;
  };
  std::vector<Knot> knots;
  Interpolation interpolation = Interpolation::step;

  /// Value at x (exact).
  Rational operator()(const Rational& x) const;
};

/// CSV with header `breakpoint,value`, or a JSON array of {"b": ..., "v": ...}.
/// The format is detected from the first non-blank character. Throws
/// ParseError on malformed input and NegativeValue on a negative value.
MarginalFile parse_marginal(std::string_view text, Interpolation interpolation = Interpolation::step);
MarginalFile read_marginal(const std::string& path, Interpolation interpolation = Interpolation::step);

/// Whitespace-separated nonnegative integers.
std::vector<std::int64_t> parse_partition(std::string_view text);
std::vector<std::int64_t> read_partition(const std::string& path);

struct Quantized {
  StepFunction function;
  Rational l1_error;   // integral of |raw - quantized|
  Rational sup_error;  // max |raw - quantized|
};

/// Interval averages over the 2^-N grid, rounded to the nearest multiple of
/// 2^-(N+K) with ties toward zero.
Quantized quantize(const MarginalFile& raw, GridParams params);

/// The marginal as an exact StepFunction when it is a step marginal whose
/// breakpoints and values are all dyadic; nullopt otherwise.
std::optional<StepFunction> exact_step_function(const MarginalFile& raw);

}  // namespace xsect
