#pragma once

// Reference computations for the tests. They work on uniform samples with
// exact rationals and never call the library's rearrangement, distribution,
// primitive, feasibility or swap code.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "xsect/binary_matrix.hpp"
#include "xsect/dyadic_number.hpp"
#include "xsect/dyadic_set.hpp"
#include "xsect/step_function.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

inline Q pow2(int e) {
  cpp_int p = 1;
  p <<= e;
  return Q(p);
}

inline Q q(const xsect::Dyadic& d) { return Q(d.numerator()) / pow2(d.exponent()); }

/// Exact dyadic from a rational with a power-of-two denominator.
inline xsect::Dyadic to_dyadic(const Q& r) {
  const cpp_int den = boost::multiprecision::denominator(r);
  int e = 0;
  while ((cpp_int(1) << e) < den) ++e;
  return xsect::Dyadic::from_parts(static_cast<std::int64_t>(boost::multiprecision::numerator(r)), e);
}

/// f on 2^log2 cells of equal width (value at each left endpoint).
struct Samples {
  int log2 = 0;
  std::vector<Q> v;
  Q width() const { return 1 / pow2(log2); }
};

inline int finest_log2(const xsect::StepFunction& f) {
  int e = 0;
  for (const auto& b : f.breakpoints()) e = std::max(e, b.exponent());
  return e;
}

inline Samples sample(const xsect::StepFunction& f, int log2) {
  Samples s{log2, {}};
  const auto& b = f.breakpoints();
  const auto& vals = f.values();
  std::size_t piece = 0;
  const std::int64_t n = std::int64_t{1} << log2;
  for (std::int64_t i = 0; i < n; ++i) {
    const Q x = Q(i) / pow2(log2);
    while (q(b[piece + 1]) <= x) ++piece;
    s.v.push_back(q(vals[piece]));
  }
  return s;
}

inline Q integral(const Samples& s) {
  Q sum = 0;
  for (const auto& v : s.v) sum += v;
  return sum * s.width();
}

/// |{x : f(x) > level}|
inline Q distribution(const Samples& s, const Q& level) {
  std::int64_t n = 0;
  for (const auto& v : s.v) n += v > level ? 1 : 0;
  return Q(n) * s.width();
}

inline std::vector<Q> sorted_desc(const Samples& s) {
  auto v = s.v;
  std::sort(v.begin(), v.end(), [](const Q& a, const Q& b) { return a > b; });
  return v;
}

/// f*(t) for t >= 0, zero beyond the support.
inline Q rearranged_value(const Samples& s, const Q& t) {
  if (t >= 1) return 0;
  const auto sorted = sorted_desc(s);
  const Q pos = t / s.width();
  const auto idx = static_cast<std::size_t>(static_cast<cpp_int>(boost::multiprecision::numerator(pos) /
                                                                 boost::multiprecision::denominator(pos)));
  return sorted[idx];
}

/// Integral of f* over [0, t].
inline Q primitive_rearr(const Samples& s, Q t) {
  t = std::clamp(t, Q(0), Q(1));
  Q sum = 0;
  Q left = t;
  for (const auto& v : sorted_desc(s)) {
    if (left <= 0) break;
    const Q w = std::min(left, s.width());
    sum += w * v;
    left -= w;
  }
  return sum;
}

/// Integral of lambda_f over [0, t], summed level band by level band.
inline Q primitive_dist(const Samples& s, const Q& t) {
  std::vector<Q> levels{Q(0)};
  for (const auto& v : s.v) levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  Q sum = 0;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const Q lo = levels[i];
    if (lo >= t) break;
    const Q hi = std::min(levels[i + 1], t);
    sum += (hi - lo) * distribution(s, lo);
  }
  return sum;
}

/// Majorization check by exhaustive evaluation at every point of the sample
/// grid and of the value grid; both primitives are linear in between.
inline bool hlp_holds(const Samples& f, const Samples& g) {
  if (integral(f) != integral(g)) return false;
  const int log2 = std::max(f.log2, g.log2);
  std::vector<Q> ts;
  for (std::int64_t i = 0; i <= (std::int64_t{1} << log2); ++i) ts.push_back(Q(i) / pow2(log2));
  for (const auto& v : g.v) {
    if (v <= 1) ts.push_back(v);
  }
  for (const auto& t : ts) {
    if (primitive_rearr(f, t) > primitive_dist(g, t)) return false;
  }
  return true;
}

inline std::vector<std::int64_t> conjugate(const std::vector<std::int64_t>& p) {
  std::int64_t top = 0;
  for (auto x : p) top = std::max(top, x);
  std::vector<std::int64_t> c;
  for (std::int64_t i = 1; i <= top; ++i) {
    std::int64_t n = 0;
    for (auto x : p) n += x >= i ? 1 : 0;
    c.push_back(n);
  }
  return c;
}

/// Existence of a 0/1 matrix with the given margins by scanning all 2^(r*c)
/// matrices.
inline bool realizable_by_enumeration(const std::vector<std::int64_t>& rows, const std::vector<std::int64_t>& cols) {
  const std::size_t r = rows.size();
  const std::size_t c = cols.size();
  const std::size_t cells = r * c;
  if (cells == 0) {
    std::int64_t total = 0;
    for (auto x : rows) total += x;
    for (auto x : cols) total += x;
    return total == 0;
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < c; ++j) s += (mask >> (i * c + j)) & 1U;
      ok = s == rows[i];
    }
    for (std::size_t j = 0; j < c && ok; ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < r; ++i) s += (mask >> (i * c + j)) & 1U;
      ok = s == cols[j];
    }
    if (ok) return true;
  }
  return false;
}

inline bool has_margins(const xsect::BinaryMatrix& a, const std::vector<std::int64_t>& rows,
                        const std::vector<std::int64_t>& cols) {
  if (a.rows() != static_cast<Eigen::Index>(rows.size()) || a.cols() != static_cast<Eigen::Index>(cols.size())) {
    return false;
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    std::int64_t s = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) ? 1 : 0;
    if (s != rows[static_cast<std::size_t>(i)]) return false;
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    std::int64_t s = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) s += a(i, j) ? 1 : 0;
    if (s != cols[static_cast<std::size_t>(j)]) return false;
  }
  return true;
}

/// All partitions of n into parts of size at most `max_part`.
inline void partitions(std::int64_t n, std::int64_t max_part, std::vector<std::int64_t>& cur,
                       std::vector<std::vector<std::int64_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions(n - part, part, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::int64_t>> partitions_up_to(std::int64_t max_total) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  for (std::int64_t n = 0; n <= max_total; ++n) partitions(n, n, cur, out);
  return out;
}

// ---- dyadic sets, cell by cell and sub-unit by sub-unit ------------------

/// v_E on the 2^-(N+K) grid, in units of 2^-(N+K) (each covering cell adds 2^K).
inline std::vector<Q> vertical_units(const xsect::DyadicSet& e) {
  const auto& p = e.params();
  const std::int64_t cells = p.cells();
  const std::int64_t per = p.units_per_cell();
  std::vector<Q> v(static_cast<std::size_t>(cells * per), 0);
  for (std::int64_t c = 0; c < cells; ++c) {
    for (std::int64_t u = 0; u < per; ++u) {
      std::int64_t covered = 0;
      for (std::int64_t r = 0; r < cells; ++r) covered += e(r, c) > u ? 1 : 0;
      v[static_cast<std::size_t>(c * per + u)] = Q(covered) / pow2(p.depth);
    }
  }
  return v;
}

inline Samples vertical_samples(const xsect::DyadicSet& e) {
  return Samples{e.params().log2_unit(), vertical_units(e)};
}

inline Samples horizontal_samples(const xsect::DyadicSet& e) {
  const auto& p = e.params();
  Samples s{p.depth, {}};
  for (Eigen::Index r = 0; r < p.cells(); ++r) {
    std::int64_t total = 0;
    for (Eigen::Index c = 0; c < p.cells(); ++c) total += e(r, c);
    s.v.push_back(Q(total) / pow2(p.log2_unit()));
  }
  return s;
}

inline xsect::DyadicSet swapped(const xsect::DyadicSet& e, const xsect::SwapMove& m) {
  const auto& p = e.params();
  const Eigen::Index b = Eigen::Index{1} << (p.depth - m.generation);
  xsect::FillGrid w = e.fill();
  for (Eigen::Index dr = 0; dr < b; ++dr) {
    for (Eigen::Index dc = 0; dc < b; ++dc) {
      const Eigen::Index r = (m.row - 1) * b + dr;
      std::swap(w(r, (m.donor - 1) * b + dc), w(r, (m.receiver - 1) * b + dc));
    }
  }
  return xsect::DyadicSet(p, w);
}

struct SwapConditions {
  bool donor = false;     // v >= f + 2^-n on the donor column
  bool receiver = false;  // v <= f - 2^-n on the receiver column
  bool majorized = false; // f still majorized by v after the move
  bool proper = false;    // receiver content a proper subset of donor content
  bool all() const { return donor && receiver && majorized && proper; }
};

inline SwapConditions swap_conditions(const xsect::DyadicSet& e, const xsect::StepFunction& f,
                                      const xsect::SwapMove& m) {
  const auto& p = e.params();
  const int fine = p.log2_unit();
  const Samples fs = sample(f, fine);
  const auto v = vertical_units(e);
  const std::int64_t span = std::int64_t{1} << (fine - m.generation);
  const Q margin = 1 / pow2(m.generation);
  SwapConditions c;
  c.donor = true;
  c.receiver = true;
  for (std::int64_t u = 0; u < span; ++u) {
    const auto dj = static_cast<std::size_t>((m.donor - 1) * span + u);
    const auto dk = static_cast<std::size_t>((m.receiver - 1) * span + u);
    c.donor = c.donor && v[dj] >= fs.v[dj] + margin;
    c.receiver = c.receiver && v[dk] <= fs.v[dk] - margin;
  }
  const Eigen::Index b = Eigen::Index{1} << (p.depth - m.generation);
  bool subset = true;
  bool strict = false;
  for (Eigen::Index dr = 0; dr < b; ++dr) {
    for (Eigen::Index dc = 0; dc < b; ++dc) {
      const Eigen::Index r = (m.row - 1) * b + dr;
      const auto wj = e(r, (m.donor - 1) * b + dc);
      const auto wk = e(r, (m.receiver - 1) * b + dc);
      subset = subset && wk <= wj;
      strict = strict || wk < wj;
    }
  }
  c.proper = subset && strict;
  // Both rearrangements are constant on the sample grid, so comparing prefix
  // sums of the sorted samples checks every t.
  const auto fsorted = sorted_desc(fs);
  const auto vsorted = sorted_desc(vertical_samples(swapped(e, m)));
  Q lhs = 0;
  Q rhs = 0;
  c.majorized = true;
  for (std::size_t i = 0; i < fsorted.size() && c.majorized; ++i) {
    lhs += fsorted[i];
    rhs += vsorted[i];
    c.majorized = lhs <= rhs;
  }
  return c;
}

inline Q l1(const Samples& a, const Samples& b) {
  Q sum = 0;
  for (std::size_t i = 0; i < a.v.size(); ++i) sum += abs(a.v[i] - b.v[i]);
  return sum * a.width();
}

// ---- random inputs --------------------------------------------------------

/// Step function on 2^log2 equal pieces with values k / 2^value_log2,
/// k in [0, max_units].
inline xsect::StepFunction random_uniform(std::mt19937_64& rng, int log2, int value_log2, std::int64_t max_units) {
  std::uniform_int_distribution<std::int64_t> d(0, max_units);
  std::vector<xsect::Dyadic> vals;
  for (std::int64_t i = 0; i < (std::int64_t{1} << log2); ++i) {
    vals.push_back(xsect::Dyadic::from_parts(d(rng), value_log2));
  }
  return xsect::StepFunction::uniform(vals, log2);
}

/// Step function with irregular breakpoints drawn from the 2^-log2 grid.
inline xsect::StepFunction random_irregular(std::mt19937_64& rng, int log2, int value_log2, std::int64_t max_units) {
  std::bernoulli_distribution keep(0.35);
  std::uniform_int_distribution<std::int64_t> d(0, max_units);
  std::vector<xsect::Dyadic> bps{xsect::Dyadic(0)};
  for (std::int64_t i = 1; i < (std::int64_t{1} << log2); ++i) {
    if (keep(rng)) bps.push_back(xsect::Dyadic::from_parts(i, log2));
  }
  bps.push_back(xsect::Dyadic(1));
  std::vector<xsect::Dyadic> vals;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) vals.push_back(xsect::Dyadic::from_parts(d(rng), value_log2));
  return xsect::StepFunction(bps, vals);
}

inline xsect::DyadicSet random_set(std::mt19937_64& rng, xsect::GridParams p) {
  std::uniform_int_distribution<std::int32_t> d(0, p.units_per_cell());
  std::bernoulli_distribution blank(0.25);
  xsect::FillGrid w(p.cells(), p.cells());
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = blank(rng) ? 0 : d(rng);
  }
  return xsect::DyadicSet(p, w);
}

/// Random pair (f, g) on the grid of p with f majorized by lambda_g.
///
/// g gets random row-band values; f starts as the column averages of
/// lambda_g, which it majorizes, and is then flattened by random transfers
/// from larger to smaller columns and shuffled.
inline std::pair<xsect::StepFunction, xsect::StepFunction> random_feasible(std::mt19937_64& rng,
                                                                           xsect::GridParams p) {
  const std::int64_t cells = p.cells();
  const std::int64_t top = std::int64_t{1} << p.log2_unit();
  std::uniform_int_distribution<std::int64_t> d(0, top);
  std::vector<std::int64_t> g_units;
  for (std::int64_t i = 0; i < cells; ++i) g_units.push_back(d(rng));

  // Column c of lambda_g averages to (sum over bands of their overlap with c) / 2^(N+K).
  const std::int64_t per = p.units_per_cell();
  std::vector<std::int64_t> f_units(static_cast<std::size_t>(cells), 0);
  for (std::int64_t c = 0; c < cells; ++c) {
    for (auto gu : g_units) f_units[static_cast<std::size_t>(c)] += std::clamp<std::int64_t>(gu - c * per, 0, per);
  }
  std::uniform_int_distribution<std::int64_t> pick(0, cells - 1);
  const int transfers = std::uniform_int_distribution<int>(0, 6)(rng);
  for (int t = 0; t < transfers; ++t) {
    auto a = static_cast<std::size_t>(pick(rng));
    auto b = static_cast<std::size_t>(pick(rng));
    if (f_units[a] < f_units[b]) std::swap(a, b);
    const std::int64_t gap = f_units[a] - f_units[b];
    if (gap < 2) continue;
    const std::int64_t move = std::uniform_int_distribution<std::int64_t>(0, gap / 2)(rng);
    f_units[a] -= move;
    f_units[b] += move;
  }
  std::shuffle(f_units.begin(), f_units.end(), rng);

  auto build = [&](const std::vector<std::int64_t>& u) {
    std::vector<xsect::Dyadic> vals;
    for (auto x : u) vals.push_back(xsect::Dyadic::from_parts(x, p.log2_unit()));
    return xsect::StepFunction::uniform(vals, p.depth);
  };
  return {build(f_units), build(g_units)};
}

}  // namespace oracle
