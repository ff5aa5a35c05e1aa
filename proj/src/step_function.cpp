#include "xsect/step_function.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace xsect {
namespace {

struct Plateau {
  Dyadic length;
  Dyadic value;
};

// Plateaus sorted by value, descending; ties keep their original order.
std::vector<Plateau> sorted_plateaus(const StepFunction& f) {
  std::vector<Plateau> out;
  out.reserve(f.pieces());
  for (std::size_t i = 0; i < f.pieces(); ++i) out.push_back({f.length(i), f.values()[i]});
  std::stable_sort(out.begin(), out.end(),
                   [](const Plateau& a, const Plateau& b) { return a.value > b.value; });
  return out;
}

}  // namespace

StepFunction::StepFunction() : breakpoints_{Dyadic(0), Dyadic(1)}, values_{Dyadic(0)} {}

StepFunction::StepFunction(std::vector<Dyadic> breakpoints, std::vector<Dyadic> values) {
  if (breakpoints.size() < 2 || breakpoints.size() != values.size() + 1) {
    throw std::invalid_argument("StepFunction: need one value per interval");
  }
  if (breakpoints.front() != Dyadic(0) || breakpoints.back() != Dyadic(1)) {
    throw std::invalid_argument("StepFunction: breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
    }
  }
  for (const auto& v : values) {
    if (v.is_negative()) throw std::invalid_argument("StepFunction: negative value");
  }
  breakpoints_.push_back(breakpoints.front());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values_.empty() && values_.back() == values[i]) continue;
    if (i > 0) breakpoints_.push_back(breakpoints[i]);
    values_.push_back(values[i]);
  }
  breakpoints_.push_back(breakpoints.back());
}

StepFunction StepFunction::constant(const Dyadic& value) {
  return StepFunction({Dyadic(0), Dyadic(1)}, {value});
}

StepFunction StepFunction::uniform(std::span<const Dyadic> values, int log2_pieces) {
  if (log2_pieces < 0 || log2_pieces > 30 || values.size() != (std::size_t{1} << log2_pieces)) {
    throw std::invalid_argument("StepFunction::uniform: expected 2^n values");
  }
  std::vector<Dyadic> bps;
  bps.reserve(values.size() + 1);
  for (std::size_t i = 0; i <= values.size(); ++i) {
    bps.push_back(Dyadic::from_parts(static_cast<std::int64_t>(i), log2_pieces));
  }
  return StepFunction(std::move(bps), {values.begin(), values.end()});
}

Dyadic StepFunction::operator()(const Dyadic& x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  auto idx = static_cast<std::ptrdiff_t>(it - breakpoints_.begin()) - 1;
  idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(values_.size()) - 1);
  return values_[static_cast<std::size_t>(idx)];
}

Dyadic StepFunction::integral() const {
  Dyadic total;
  for (std::size_t i = 0; i < pieces(); ++i) total += length(i) * values_[i];
  return total;
}

Dyadic StepFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

bool StepFunction::constant_on_grid(int log2_width) const {
  return std::all_of(breakpoints_.begin(), breakpoints_.end(),
                     [&](const Dyadic& b) { return b.is_multiple_of_pow2(log2_width); });
}

std::vector<Dyadic> StepFunction::sample(int log2_width) const {
  if (!constant_on_grid(log2_width)) {
    throw std::invalid_argument("StepFunction::sample: breakpoints off the requested grid");
  }
  const std::size_t n = std::size_t{1} << log2_width;
  std::vector<Dyadic> out;
  out.reserve(n);
  std::size_t piece = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto left = Dyadic::from_parts(static_cast<std::int64_t>(i), log2_width);
    while (breakpoints_[piece + 1] <= left) ++piece;
    out.push_back(values_[piece]);
  }
  return out;
}

Dyadic distribution(const StepFunction& f, const Dyadic& s) {
  Dyadic measure;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.values()[i] > s) measure += f.length(i);
  }
  return measure;
}

StepFunction rearrange(const StepFunction& f) {
  auto plateaus = sorted_plateaus(f);
  std::vector<Dyadic> bps{Dyadic(0)};
  std::vector<Dyadic> vals;
  Dyadic at;
  for (const auto& p : plateaus) {
    at += p.length;
    bps.push_back(at);
    vals.push_back(p.value);
  }
  return StepFunction(std::move(bps), std::move(vals));
}

Dyadic rearranged_value(const StepFunction& f, const Dyadic& t) {
  if (t.is_negative()) throw std::domain_error("rearranged_value: t < 0");
  if (t >= Dyadic(1)) return Dyadic(0);
  return rearrange(f)(t);
}

RearrPrimitive::RearrPrimitive(const StepFunction& f) {
  cum_length_.push_back(Dyadic(0));
  cum_integral_.push_back(Dyadic(0));
  for (const auto& p : sorted_plateaus(f)) {
    cum_length_.push_back(cum_length_.back() + p.length);
    cum_integral_.push_back(cum_integral_.back() + p.length * p.value);
    values_.push_back(p.value);
  }
}

Dyadic RearrPrimitive::operator()(const Dyadic& t) const {
  if (t <= Dyadic(0)) return Dyadic(0);
  if (t >= Dyadic(1)) return cum_integral_.back();
  auto it = std::upper_bound(cum_length_.begin(), cum_length_.end(), t);
  auto i = static_cast<std::size_t>(it - cum_length_.begin()) - 1;
  return cum_integral_[i] + (t - cum_length_[i]) * values_[i];
}

DistPrimitive::DistPrimitive(const StepFunction& g) {
  std::vector<Plateau> plateaus;
  for (std::size_t i = 0; i < g.pieces(); ++i) plateaus.push_back({g.length(i), g.values()[i]});
  std::sort(plateaus.begin(), plateaus.end(),
            [](const Plateau& a, const Plateau& b) { return a.value < b.value; });
  kinks_.push_back(Dyadic(0));
  below_integral_.push_back(Dyadic(0));
  above_measure_.push_back(Dyadic(1));
  for (const auto& p : plateaus) {
    if (p.value.is_zero()) {
      above_measure_.back() -= p.length;
      continue;
    }
    if (p.value != kinks_.back()) {
      kinks_.push_back(p.value);
      below_integral_.push_back(below_integral_.back());
      above_measure_.push_back(above_measure_.back());
    }
    below_integral_.back() += p.length * p.value;
    above_measure_.back() -= p.length;
  }
}

Dyadic DistPrimitive::operator()(const Dyadic& t) const {
  if (t <= Dyadic(0)) return Dyadic(0);
  auto it = std::upper_bound(kinks_.begin(), kinks_.end(), t);
  auto i = static_cast<std::size_t>(it - kinks_.begin()) - 1;
  return below_integral_[i] + t * above_measure_[i];
}

Dyadic primitive_rearr(const StepFunction& f, const Dyadic& t) { return RearrPrimitive(f)(t); }

Dyadic primitive_dist(const StepFunction& g, const Dyadic& t) { return DistPrimitive(g)(t); }

std::vector<Dyadic> rearr_kinks(const StepFunction& f) { return RearrPrimitive(f).kinks(); }

std::vector<Dyadic> dist_kinks(const StepFunction& g) { return DistPrimitive(g).kinks(); }

Dyadic l1_distance(const StepFunction& a, const StepFunction& b) {
  std::vector<Dyadic> cuts = a.breakpoints();
  cuts.insert(cuts.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Dyadic total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += (cuts[i + 1] - cuts[i]) * abs(a(cuts[i]) - b(cuts[i]));
  }
  return total;
}

}  // namespace xsect
