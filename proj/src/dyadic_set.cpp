#include "xsect/dyadic_set.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

#include "swap_engine.hpp"
#include "xsect/errors.hpp"

namespace xsect {

GridParams::GridParams(int depth, int refinement) : depth(depth), refinement(refinement) {
  if (depth < 1 || refinement < 0 || depth + refinement > 30) {
    throw std::invalid_argument("GridParams: need N >= 1, K >= 0, N + K <= 30");
  }
}

DyadicSet::DyadicSet(GridParams params)
    : params_(params), fill_(FillGrid::Zero(params.cells(), params.cells())) {}

DyadicSet::DyadicSet(GridParams params, FillGrid fill) : params_(params), fill_(std::move(fill)) {
  if (fill_.rows() != params_.cells() || fill_.cols() != params_.cells()) {
    throw std::invalid_argument("DyadicSet: fill grid must be 2^N x 2^N");
  }
  if ((fill_.array() < 0).any() || (fill_.array() > params_.units_per_cell()).any()) {
    throw std::invalid_argument("DyadicSet: fill width outside [0, 2^K]");
  }
}

DyadicSet DyadicSet::full(GridParams params) {
  return DyadicSet(params, FillGrid::Constant(params.cells(), params.cells(), params.units_per_cell()));
}

Dyadic DyadicSet::measure() const {
  const std::int64_t total = fill_.cast<std::int64_t>().sum();
  return Dyadic::from_parts(total, params_.depth + params_.log2_unit());
}

DyadicSet initial_set(const StepFunction& g, GridParams params) {
  const auto rows = detail::column_units(g, params, "initial_set: g");
  FillGrid fill = FillGrid::Zero(params.cells(), params.cells());
  const std::int64_t per_cell = params.units_per_cell();
  for (Eigen::Index r = 0; r < params.cells(); ++r) {
    const std::int64_t width = rows[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < params.cells(); ++c) {
      const std::int64_t here = std::clamp<std::int64_t>(width - c * per_cell, 0, per_cell);
      fill(r, c) = static_cast<std::int32_t>(here);
    }
  }
  return DyadicSet(params, std::move(fill));
}

StepFunction vertical_section(const DyadicSet& e) {
  const auto& p = e.params();
  std::vector<Dyadic> values;
  values.reserve(static_cast<std::size_t>(p.units()));
  for (Eigen::Index c = 0; c < p.cells(); ++c) {
    for (std::int32_t o = 0; o < p.units_per_cell(); ++o) {
      const std::int64_t covering = (e.fill().col(c).array() > o).count();
      values.push_back(Dyadic::from_parts(covering, p.depth));
    }
  }
  return StepFunction::uniform(values, p.log2_unit());
}

StepFunction horizontal_section(const DyadicSet& e) {
  const auto& p = e.params();
  std::vector<Dyadic> values;
  values.reserve(static_cast<std::size_t>(p.cells()));
  for (Eigen::Index r = 0; r < p.cells(); ++r) {
    values.push_back(Dyadic::from_parts(e.fill().row(r).cast<std::int64_t>().sum(), p.log2_unit()));
  }
  return StepFunction::uniform(values, p.depth);
}

Dyadic symmetric_difference(const DyadicSet& a, const DyadicSet& b) {
  if (!(a.params() == b.params())) throw GridMismatch("symmetric_difference: different grids");
  const std::int64_t units = (a.fill() - b.fill()).cwiseAbs().cast<std::int64_t>().sum();
  return Dyadic::from_parts(units, a.params().depth + a.params().log2_unit());
}

DyadicSet swap(const DyadicSet& e, const SwapMove& m) {
  const auto& p = e.params();
  if (m.donor == m.receiver) throw std::invalid_argument("swap: donor and receiver coincide");
  if (m.generation < 1 || m.generation > p.depth) throw std::out_of_range("swap: generation");
  const int blocks = 1 << m.generation;
  auto in = [&](int x) { return x >= 1 && x <= blocks; };
  if (!in(m.row) || !in(m.donor) || !in(m.receiver)) throw std::out_of_range("swap: block index");

  const Eigen::Index side = Eigen::Index{1} << (p.depth - m.generation);
  FillGrid fill = e.fill();
  const Eigen::Index r0 = (m.row - 1) * side;
  fill.block(r0, (m.donor - 1) * side, side, side)
      .swap(fill.block(r0, (m.receiver - 1) * side, side, side));
  return DyadicSet(p, std::move(fill));
}

bool is_swappable(const DyadicSet& e, const StepFunction& f, const SwapMove& m) {
  if (m.donor == m.receiver) throw std::invalid_argument("is_swappable: donor and receiver coincide");
  detail::SwapEngine engine(e, f);
  if (!engine.in_range(m)) return false;
  assert(engine.majorized() && "is_swappable: f is not majorized by v_E");
  return engine.swappable(m);
}

namespace detail {

std::vector<std::int64_t> column_units(const StepFunction& f, const GridParams& params,
                                       const char* what) {
  if (!f.constant_on_grid(params.depth)) {
    throw QuantizationError(std::string(what) + " is not constant on width-2^-N intervals");
  }
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(params.cells()));
  for (const auto& v : f.sample(params.depth)) {
    if (!v.is_multiple_of_pow2(params.log2_unit())) {
      throw QuantizationError(std::string(what) + " has a value off the 2^-(N+K) grid");
    }
    if (v > Dyadic(1)) throw QuantizationError(std::string(what) + " exceeds 1");
    out.push_back(v.scaled_to(params.log2_unit()));
  }
  return out;
}

SwapEngine::SwapEngine(DyadicSet set, const StepFunction& f)
    : set_(std::move(set)), p_(set_.params()), f_col_(column_units(f, p_, "f")) {
  f_sorted_ = f_col_;
  std::sort(f_sorted_.begin(), f_sorted_.end(), std::greater<>());
  f_prefix_.assign(f_sorted_.size() + 1, 0);
  for (std::size_t c = 0; c < f_sorted_.size(); ++c) {
    f_prefix_[c + 1] = f_prefix_[c] + f_sorted_[c] * p_.units_per_cell();
  }
  count_.assign(static_cast<std::size_t>(p_.units()), 0);
  hist_.assign(static_cast<std::size_t>(p_.cells()) + 1, 0);
  hist_[0] = p_.units();
  for (Eigen::Index c = 0; c < p_.cells(); ++c) recount_column(c);
}

void SwapEngine::recount_column(Eigen::Index c) {
  const auto base = static_cast<std::size_t>(c * p_.units_per_cell());
  for (std::int32_t o = 0; o < p_.units_per_cell(); ++o) {
    auto& slot = count_[base + static_cast<std::size_t>(o)];
    --hist_[static_cast<std::size_t>(slot)];
    slot = static_cast<std::int32_t>((set_.fill().col(c).array() > o).count());
    ++hist_[static_cast<std::size_t>(slot)];
  }
}

bool SwapEngine::in_range(const SwapMove& m) const {
  if (m.generation < 1 || m.generation > p_.depth) return false;
  const int blocks = 1 << m.generation;
  auto in = [&](int x) { return x >= 1 && x <= blocks; };
  return in(m.row) && in(m.donor) && in(m.receiver) && m.donor != m.receiver;
}

bool SwapEngine::donor_ok(int n, int block) const {
  const std::int64_t margin = std::int64_t{1} << (p_.log2_unit() - n);
  const std::int64_t span = std::int64_t{1} << (p_.log2_unit() - n);
  const std::int64_t first = (block - 1) * span;
  for (std::int64_t x = first; x < first + span; ++x) {
    const std::int64_t v = std::int64_t{count_[static_cast<std::size_t>(x)]} << p_.refinement;
    if (v < f_col_[static_cast<std::size_t>(x >> p_.refinement)] + margin) return false;
  }
  return true;
}

bool SwapEngine::receiver_ok(int n, int block) const {
  const std::int64_t margin = std::int64_t{1} << (p_.log2_unit() - n);
  const std::int64_t span = std::int64_t{1} << (p_.log2_unit() - n);
  const std::int64_t first = (block - 1) * span;
  for (std::int64_t x = first; x < first + span; ++x) {
    const std::int64_t v = std::int64_t{count_[static_cast<std::size_t>(x)]} << p_.refinement;
    if (v > f_col_[static_cast<std::size_t>(x >> p_.refinement)] - margin) return false;
  }
  return true;
}

bool SwapEngine::subset_ok(const SwapMove& m) const {
  const Eigen::Index side = Eigen::Index{1} << (p_.depth - m.generation);
  const Eigen::Index r0 = (m.row - 1) * side;
  const auto donor = set_.fill().block(r0, (m.donor - 1) * side, side, side);
  const auto receiver = set_.fill().block(r0, (m.receiver - 1) * side, side, side);
  return (receiver.array() <= donor.array()).all() && (receiver.array() < donor.array()).any();
}

bool SwapEngine::majorization_kept(const SwapMove& m) const {
  const Eigen::Index side = Eigen::Index{1} << (p_.depth - m.generation);
  const Eigen::Index r0 = (m.row - 1) * side;
  const Eigen::Index cj = (m.donor - 1) * side;
  const Eigen::Index ck = (m.receiver - 1) * side;
  const auto& fill = set_.fill();

  std::vector<std::int64_t> hist = hist_;
  auto relocate = [&](Eigen::Index dst_col, Eigen::Index src_col) {
    // Column dst_col loses its band content and gains src_col's.
    for (std::int32_t o = 0; o < p_.units_per_cell(); ++o) {
      const auto x = static_cast<std::size_t>(dst_col * p_.units_per_cell() + o);
      const auto lose = (fill.col(dst_col).segment(r0, side).array() > o).count();
      const auto gain = (fill.col(src_col).segment(r0, side).array() > o).count();
      const auto before = count_[x];
      const auto after = before - lose + gain;
      --hist[static_cast<std::size_t>(before)];
      ++hist[static_cast<std::size_t>(after)];
    }
  };
  for (Eigen::Index c = 0; c < side; ++c) {
    relocate(cj + c, ck + c);
    relocate(ck + c, cj + c);
  }
  return dominated(hist);
}

// Checks F(t) <= V(t) at every kink of either side, where F is the primitive
// of sorted f and V the primitive of sorted v built from the coverage
// histogram. Both are piecewise linear, so kinks suffice.
bool SwapEngine::dominated(const std::vector<std::int64_t>& hist) const {
  const std::int64_t per_cell = p_.units_per_cell();
  const auto cells = static_cast<std::int64_t>(f_sorted_.size());
  auto f_primitive = [&](std::int64_t t) {
    const std::int64_t col = t / per_cell;
    if (col >= cells) return f_prefix_.back();
    return f_prefix_[static_cast<std::size_t>(col)] +
           (t % per_cell) * f_sorted_[static_cast<std::size_t>(col)];
  };

  std::int64_t pos = 0;
  std::int64_t area = 0;
  std::int64_t next_col_kink = per_cell;
  for (auto level = static_cast<std::int64_t>(hist.size()) - 1; level >= 0; --level) {
    const std::int64_t len = hist[static_cast<std::size_t>(level)];
    if (len == 0) continue;
    const std::int64_t slope = level << p_.refinement;
    const std::int64_t end = pos + len;
    while (next_col_kink <= end) {
      if (f_primitive(next_col_kink) > area + (next_col_kink - pos) * slope) return false;
      next_col_kink += per_cell;
    }
    area += len * slope;
    pos = end;
    if (f_primitive(pos) > area) return false;
  }
  return true;
}

bool SwapEngine::swappable(const SwapMove& m) const {
  return in_range(m) && donor_ok(m.generation, m.donor) && receiver_ok(m.generation, m.receiver) &&
         subset_ok(m) && majorization_kept(m);
}

SwapRecord SwapEngine::apply(const SwapMove& m) {
  const std::int64_t before_l1 = l1_units();
  DyadicSet next = swap(set_, m);
  const std::int64_t sym_units =
      (next.fill() - set_.fill()).cwiseAbs().cast<std::int64_t>().sum() << p_.refinement;
  set_ = std::move(next);
  const Eigen::Index side = Eigen::Index{1} << (p_.depth - m.generation);
  for (Eigen::Index c = 0; c < side; ++c) {
    recount_column((m.donor - 1) * side + c);
    recount_column((m.receiver - 1) * side + c);
  }
  const int area_exp = 2 * p_.log2_unit();
  return SwapRecord{m, Dyadic::from_parts(before_l1 - l1_units(), area_exp),
                    Dyadic::from_parts(sym_units, area_exp)};
}

std::int64_t SwapEngine::l1_units() const {
  std::int64_t total = 0;
  for (std::size_t x = 0; x < count_.size(); ++x) {
    const std::int64_t v = std::int64_t{count_[x]} << p_.refinement;
    const std::int64_t target = f_col_[x >> p_.refinement];
    total += v > target ? v - target : target - v;
  }
  return total;
}

Dyadic SwapEngine::l1() const { return Dyadic::from_parts(l1_units(), 2 * p_.log2_unit()); }

}  // namespace detail
}  // namespace xsect
