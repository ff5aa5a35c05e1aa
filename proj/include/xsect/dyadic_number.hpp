#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace xsect {

/// Exact dyadic rational `numerator / 2^exponent`.
///
/// Values are kept in canonical form (odd numerator, or zero with exponent
/// zero), so equality is structural. The numerator is signed so that
/// differences such as `f - v` stay representable; every arithmetic result is
/// exact or the operation throws `std::overflow_error`.
class Dyadic {
 public:
  static constexpr int kMaxExponent = 62;

  constexpr Dyadic() = default;
  constexpr Dyadic(std::int64_t integer) : num_(integer) {}  // NOLINT: implicit by design of a number type

  /// `numerator / 2^exponent`, reduced.
  static Dyadic from_parts(std::int64_t numerator, int exponent);

  /// Parses "a", "a/b" (b a power of two) or a finite binary-exact decimal.
  static Dyadic parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  int exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  /// Numerator when expressed with denominator `2^exponent`; throws if the
  /// value is not a multiple of `2^-exponent` or does not fit.
  std::int64_t scaled_to(int exponent) const;
  bool is_multiple_of_pow2(int exponent) const { return exp_ <= exponent; }

  double to_double() const;
  std::string to_string() const;

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  std::int64_t num_ = 0;
  int exp_ = 0;
};

/// `2^-exponent`.
Dyadic pow2_inverse(int exponent);

Dyadic abs(const Dyadic& x);
Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

std::ostream& operator<<(std::ostream& os, const Dyadic& x);

}  // namespace xsect
