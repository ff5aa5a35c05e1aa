#include "xsect/dyadic_number.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace xsect {
namespace {

using Wide = __int128;

constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();
constexpr Wide kMin = std::numeric_limits<std::int64_t>::min();

// Builds the canonical value `num / 2^exp` from a wide intermediate.
Dyadic reduce(Wide num, int exp) {
  if (num == 0) return Dyadic{};
  while (exp > 0 && (num & 1) == 0) {
    num >>= 1;
    --exp;
  }
  while (exp < 0) {
    num *= 2;
    ++exp;
    if (num > kMax || num < kMin) throw std::overflow_error("Dyadic: integer part overflow");
  }
  if (num > kMax || num < kMin || exp > Dyadic::kMaxExponent) {
    throw std::overflow_error("Dyadic: result not representable");
  }
  return Dyadic::from_parts(static_cast<std::int64_t>(num), exp);
}

Wide shifted(std::int64_t num, int by) {
  if (num == 0) return 0;
  // |num| < 2^63, so the shift is safe while by <= 62.
  if (by > 62) throw std::overflow_error("Dyadic: exponent gap too large");
  return static_cast<Wide>(num) * (Wide{1} << by);
}

}  // namespace

Dyadic Dyadic::from_parts(std::int64_t numerator, int exponent) {
  if (exponent < 0) {
    return reduce(numerator, exponent);
  }
  Dyadic d;
  if (numerator == 0) return d;
  while (exponent > 0 && (numerator & 1) == 0) {
    numerator /= 2;
    --exponent;
  }
  if (exponent > kMaxExponent) throw std::overflow_error("Dyadic: exponent out of range");
  d.num_ = numerator;
  d.exp_ = exponent;
  return d;
}

Dyadic Dyadic::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("Dyadic::parse: empty string");

  auto parse_int = [](std::string_view s) -> std::int64_t {
    if (s.empty()) throw std::invalid_argument("Dyadic::parse: missing digits");
    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("Dyadic::parse: missing digits");
    Wide v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("Dyadic::parse: bad digit");
      v = v * 10 + (c - '0');
      if (v > kMax) throw std::overflow_error("Dyadic::parse: integer too large");
    }
    return static_cast<std::int64_t>(neg ? -v : v);
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(trim(text.substr(0, slash)));
    std::int64_t den = parse_int(trim(text.substr(slash + 1)));
    if (den <= 0 || (den & (den - 1)) != 0) {
      throw std::invalid_argument("Dyadic::parse: denominator must be a positive power of two");
    }
    int exp = 0;
    while ((std::int64_t{1} << exp) != den) ++exp;
    return from_parts(num, exp);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      int_part.remove_prefix(1);
    }
    // value = digits / 10^len = digits / (2^len 5^len); exact iff 5^len | digits.
    Wide digits = 0;
    Wide pow5 = 1;
    for (char c : int_part) {
      if (c < '0' || c > '9') throw std::invalid_argument("Dyadic::parse: bad digit");
      digits = digits * 10 + (c - '0');
      if (digits > (Wide{1} << 120)) throw std::overflow_error("Dyadic::parse: too many digits");
    }
    for (char c : frac) {
      if (c < '0' || c > '9') throw std::invalid_argument("Dyadic::parse: bad digit");
      digits = digits * 10 + (c - '0');
      pow5 *= 5;
      if (digits > (Wide{1} << 120) || pow5 > (Wide{1} << 120)) {
        throw std::overflow_error("Dyadic::parse: too many digits");
      }
    }
    if (digits % pow5 != 0) {
      throw std::invalid_argument("Dyadic::parse: decimal is not a dyadic rational");
    }
    Wide num = digits / pow5;
    return reduce(neg ? -num : num, static_cast<int>(frac.size()));
  }

  return Dyadic(parse_int(text));
}

std::int64_t Dyadic::scaled_to(int exponent) const {
  if (exp_ > exponent) throw std::domain_error("Dyadic: value not on requested grid");
  Wide w = shifted(num_, exponent - exp_);
  if (w > kMax || w < kMin) throw std::overflow_error("Dyadic: scaled value overflow");
  return static_cast<std::int64_t>(w);
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -exp_); }

std::string Dyadic::to_string() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << exp_);
}

Dyadic Dyadic::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("Dyadic: negate");
  Dyadic d = *this;
  d.num_ = -num_;
  return d;
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  int e = std::max(exp_, rhs.exp_);
  *this = reduce(shifted(num_, e - exp_) + shifted(rhs.num_, e - rhs.exp_), e);
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) {
  int e = std::max(exp_, rhs.exp_);
  *this = reduce(shifted(num_, e - exp_) - shifted(rhs.num_, e - rhs.exp_), e);
  return *this;
}

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  *this = reduce(Wide{num_} * Wide{rhs.num_}, exp_ + rhs.exp_);
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int e = std::max(a.exp_, b.exp_);
  Wide x = shifted(a.num_, e - a.exp_);
  Wide y = shifted(b.num_, e - b.exp_);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic pow2_inverse(int exponent) { return Dyadic::from_parts(1, exponent); }

Dyadic abs(const Dyadic& x) { return x.is_negative() ? -x : x; }
Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Dyadic& x) { return os << x.to_string(); }

}  // namespace xsect
