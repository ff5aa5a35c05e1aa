#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "xsect/dyadic_number.hpp"
#include "xsect/step_function.hpp"

namespace xsect {

/// Resolution of a dyadic set. Finest cells have side 2^-depth; fill widths
/// inside a cell are integer multiples of 2^-(depth + refinement).
struct GridParams {
  int depth = 1;       // N
  int refinement = 0;  // K

  GridParams() = default;
  /// Throws std::invalid_argument unless depth >= 1, refinement >= 0 and
  /// depth + refinement <= 30.
  GridParams(int depth, int refinement);

  Eigen::Index cells() const { return Eigen::Index{1} << depth; }
  std::int32_t units_per_cell() const { return std::int32_t{1} << refinement; }
  int log2_unit() const { return depth + refinement; }
  Eigen::Index units() const { return Eigen::Index{1} << log2_unit(); }

  friend bool operator==(const GridParams&, const GridParams&) = default;
};

/// Row-major grid of fill widths; entry (r, c) belongs to row band Y_{r+1}
/// and column X_{c+1}.
using FillGrid = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Subset of [0,1]^2 made of left-aligned rectangles, one per finest cell.
///
/// Cell (r, c) holds `[c 2^-N, c 2^-N + w 2^-(N+K)) x [r 2^-N, (r+1) 2^-N)`
/// with `w = fill(r, c)` in [0, 2^K]. Every set reachable from a hypograph by
/// horizontal block swaps has this form.
class DyadicSet {
 public:
  DyadicSet() = default;
  explicit DyadicSet(GridParams params);
  /// Throws std::invalid_argument on wrong shape or out-of-range widths.
  DyadicSet(GridParams params, FillGrid fill);

  static DyadicSet full(GridParams params);

  const GridParams& params() const { return params_; }
  const FillGrid& fill() const { return fill_; }
  std::int32_t operator()(Eigen::Index r, Eigen::Index c) const { return fill_(r, c); }

  /// Lebesgue measure, exact.
  Dyadic measure() const;

  friend bool operator==(const DyadicSet&, const DyadicSet&) = default;

 private:
  GridParams params_;
  FillGrid fill_;
};

/// Exchange of the contents of dyadic squares Q^n_{ij} and Q^n_{ik}.
/// Indices are 1-based as in the dyadic-square numbering; `donor` is j and
/// `receiver` is k.
struct SwapMove {
  int generation = 1;
  int row = 1;
  int donor = 1;
  int receiver = 2;

  friend bool operator==(const SwapMove&, const SwapMove&) = default;
};

/// Hypograph `{(x, y) : x < g(y)}`. Throws QuantizationError unless g is
/// constant on row bands of width 2^-N with values that are multiples of
/// 2^-(N+K) in [0,1].
DyadicSet initial_set(const StepFunction& g, GridParams params);

/// x -> length of the vertical slice at x.
StepFunction vertical_section(const DyadicSet& e);
/// y -> length of the horizontal slice at y.
StepFunction horizontal_section(const DyadicSet& e);

/// Measure of the symmetric difference of two sets on the same grid.
Dyadic symmetric_difference(const DyadicSet& a, const DyadicSet& b);

/// Throws std::out_of_range on indices outside generation `m.generation`
/// and std::invalid_argument when donor == receiver.
DyadicSet swap(const DyadicSet& e, const SwapMove& m);

/// Whether Q^n_{ij} and Q^n_{ik} are swappable with respect to f and e:
/// strict 2^-n excess of v_e over f on the donor column, strict 2^-n deficit
/// on the receiver column, majorization of f by v_e kept after the swap, and
/// the receiver's content a proper subset of the shifted donor content.
///
/// f must be constant on columns of width 2^-N with values on the 2^-(N+K)
/// grid (QuantizationError otherwise). Out-of-range indices give false.
bool is_swappable(const DyadicSet& e, const StepFunction& f, const SwapMove& m);

}  // namespace xsect
