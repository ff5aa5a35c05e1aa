#include "xsect/marginal.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "xsect/errors.hpp"

namespace xsect {
namespace {

using boost::multiprecision::cpp_int;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cpp_int parse_digits(std::string_view s) {
  if (s.empty()) throw ParseError("missing digits");
  cpp_int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError("bad digit in '" + std::string(s) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

cpp_int pow10(long e) {
  cpp_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

// A maximal interval on which the raw marginal is affine.
struct Piece {
  Rational x0, x1, y0, y1;
  Rational at(const Rational& x) const {
    if (x1 == x0) return y0;
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }
};

std::vector<Piece> pieces_of(const MarginalFile& raw) {
  std::vector<Piece> out;
  const auto& k = raw.knots;
  if (raw.interpolation == Interpolation::step) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      Rational end = i + 1 < k.size() ? k[i + 1].breakpoint : Rational(1);
      if (k[i].breakpoint == 1) break;
      out.push_back({k[i].breakpoint, end, k[i].value, k[i].value});
    }
  } else {
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      out.push_back({k[i].breakpoint, k[i + 1].breakpoint, k[i].value, k[i + 1].value});
    }
  }
  return out;
}

void validate(const MarginalFile& m) {
  const auto& k = m.knots;
  if (k.empty()) throw ParseError("marginal has no knots");
  if (k.front().breakpoint != 0) throw ParseError("first breakpoint must be 0");
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i].value < 0) throw NegativeValue("negative value at breakpoint " + to_string(k[i].breakpoint));
    if (k[i].breakpoint < 0 || k[i].breakpoint > 1) throw ParseError("breakpoint outside [0,1]");
    if (i > 0 && !(k[i - 1].breakpoint < k[i].breakpoint)) {
      throw ParseError("breakpoints must be strictly increasing");
    }
  }
  if (m.interpolation == Interpolation::linear && k.back().breakpoint != 1) {
    throw ParseError("linear marginal must have a knot at 1");
  }
  if (m.interpolation == Interpolation::step && k.size() == 1 && k.front().breakpoint == 1) {
    throw ParseError("step marginal has no interval");
  }
}

// Integral and sup of |affine - c| over [a, b] for the affine piece p.
void accumulate_error(const Piece& p, const Rational& a, const Rational& b, const Rational& c,
                      Rational& l1, Rational& sup) {
  const Rational d0 = p.at(a) - c;
  const Rational d1 = p.at(b) - c;
  const Rational w = b - a;
  const Rational a0 = abs(d0);
  const Rational a1 = abs(d1);
  sup = std::max({sup, a0, a1});
  if ((d0 >= 0 && d1 >= 0) || (d0 <= 0 && d1 <= 0)) {
    l1 += (a0 + a1) * w / 2;
  } else {
    l1 += w * (a0 * a0 + a1 * a1) / (2 * (a0 + a1));
  }
}

Dyadic to_dyadic(const cpp_int& units, int exponent) {
  if (units > std::numeric_limits<std::int64_t>::max()) throw ParseError("quantized value too large");
  return Dyadic::from_parts(static_cast<std::int64_t>(units), exponent);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty number");
  bool neg = false;
  if (text.front() == '-' || text.front() == '+') {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    cpp_int den = parse_digits(trim(text.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator");
    r = Rational(parse_digits(trim(text.substr(0, slash))), den);
  } else {
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view es = text.substr(e + 1);
      bool eneg = false;
      if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
        eneg = es.front() == '-';
        es.remove_prefix(1);
      }
      if (es.empty() || es.size() > 4) throw ParseError("bad exponent");
      exp10 = static_cast<long>(parse_digits(es));
      if (eneg) exp10 = -exp10;
      text = text.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      frac_len = static_cast<long>(text.size() - dot - 1);
    } else {
      digits = std::string(text);
    }
    if (digits.empty()) throw ParseError("missing digits");
    cpp_int mant = parse_digits(digits);
    const long shift = exp10 - frac_len;
    r = shift >= 0 ? Rational(mant * pow10(shift)) : Rational(mant, pow10(-shift));
  }
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational MarginalFile::operator()(const Rational& x) const {
  const auto ps = pieces_of(*this);
  for (const auto& p : ps) {
    if (x >= p.x0 && x < p.x1) return p.at(x);
  }
  return ps.empty() ? Rational(0) : ps.back().at(x);
}

MarginalFile parse_marginal(std::string_view text, Interpolation interpolation) {
  MarginalFile out;
  out.interpolation = interpolation;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty marginal file");

  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad JSON marginal: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("JSON marginal must be an array");
    auto field = [](const nlohmann::json& v) {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
      if (v.is_number()) return parse_rational(v.dump());
      throw ParseError("JSON marginal entries must be strings or numbers");
    };
    for (const auto& e : j) {
      if (!e.is_object() || !e.contains("b") || !e.contains("v")) {
        throw ParseError("JSON marginal entries need \"b\" and \"v\"");
      }
      out.knots.push_back({field(e["b"]), field(e["v"])});
    }
  } else {
    std::istringstream in{std::string(text)};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
      std::string_view l = trim(line);
      if (l.empty() || l.front() == '#') continue;
      if (!header_seen) {
        std::string h(l);
        h.erase(std::remove_if(h.begin(), h.end(), [](unsigned char c) { return std::isspace(c); }), h.end());
        if (h != "breakpoint,value") throw ParseError("CSV marginal must start with header breakpoint,value");
        header_seen = true;
        continue;
      }
      auto comma = l.find(',');
      if (comma == std::string_view::npos) throw ParseError("CSV row without comma: " + std::string(l));
      out.knots.push_back({parse_rational(l.substr(0, comma)), parse_rational(l.substr(comma + 1))});
    }
    if (!header_seen) throw ParseError("CSV marginal is missing its header");
  }
  validate(out);
  return out;
}

MarginalFile read_marginal(const std::string& path, Interpolation interpolation) {
  return parse_marginal(slurp(path), interpolation);
}

std::vector<std::int64_t> parse_partition(std::string_view text) {
  std::vector<std::int64_t> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.front() == '-') throw NegativeValue("negative partition part: " + tok);
    cpp_int v = parse_digits(tok);
    if (v > std::numeric_limits<std::int64_t>::max()) throw ParseError("partition part too large");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::vector<std::int64_t> read_partition(const std::string& path) { return parse_partition(slurp(path)); }

Quantized quantize(const MarginalFile& raw, GridParams params) {
  validate(raw);
  const auto ps = pieces_of(raw);
  const cpp_int cells = cpp_int(1) << params.depth;
  const cpp_int scale = cpp_int(1) << params.log2_unit();

  Quantized out;
  std::vector<Dyadic> values;
  for (cpp_int c = 0; c < cells; ++c) {
    const Rational lo(c, cells);
    const Rational hi(c + 1, cells);
    Rational area = 0;
    for (const auto& p : ps) {
      const Rational a = std::max(lo, p.x0);
      const Rational b = std::min(hi, p.x1);
      if (a < b) area += (p.at(a) + p.at(b)) * (b - a) / 2;
    }
    const Rational scaled = area * cells * scale;  // average in units of 2^-(N+K)
    cpp_int units = numerator(scaled) / denominator(scaled);
    if (scaled - Rational(units) > Rational(1, 2)) ++units;
    const Rational q(units, scale);
    for (const auto& p : ps) {
      const Rational a = std::max(lo, p.x0);
      const Rational b = std::min(hi, p.x1);
      if (a < b) accumulate_error(p, a, b, q, out.l1_error, out.sup_error);
    }
    values.push_back(to_dyadic(units, params.log2_unit()));
  }
  out.function = StepFunction::uniform(values, params.depth);
  return out;
}

std::optional<StepFunction> exact_step_function(const MarginalFile& raw) {
  if (raw.interpolation != Interpolation::step) return std::nullopt;
  auto as_dyadic = [](const Rational& r) -> std::optional<Dyadic> {
    const cpp_int den = denominator(r);
    if ((den & (den - 1)) != 0 || abs(numerator(r)) > std::numeric_limits<std::int64_t>::max()) {
      return std::nullopt;
    }
    const int exp = static_cast<int>(boost::multiprecision::msb(den));
    if (exp > Dyadic::kMaxExponent) return std::nullopt;
    return Dyadic::from_parts(static_cast<std::int64_t>(numerator(r)), exp);
  };
  std::vector<Dyadic> bps;
  std::vector<Dyadic> vals;
  for (const auto& p : pieces_of(raw)) {
    auto b = as_dyadic(p.x0);
    auto v = as_dyadic(p.y0);
    if (!b || !v) return std::nullopt;
    bps.push_back(*b);
    vals.push_back(*v);
  }
  bps.push_back(Dyadic(1));
  return StepFunction(std::move(bps), std::move(vals));
}

}  // namespace xsect
