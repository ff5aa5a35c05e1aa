#pragma once

// Integer-unit machinery behind swap detection. Values are counted in units
// of 2^-(N+K) and areas in units of 2^-2(N+K).

#include <cstdint>
#include <vector>

#include "xsect/dyadic_set.hpp"
#include "xsect/step_function.hpp"
#include "xsect/trace.hpp"

namespace xsect::detail {

/// Per-column values of f in units of 2^-(N+K); throws QuantizationError if f
/// is not constant on width-2^-N columns or not on the value grid.
std::vector<std::int64_t> column_units(const StepFunction& f, const GridParams& params,
                                       const char* what);

class SwapEngine {
 public:
  SwapEngine(DyadicSet set, const StepFunction& f);

  const DyadicSet& set() const { return set_; }

  bool in_range(const SwapMove& m) const;
  /// v >= f + 2^-n on the whole column block.
  bool donor_ok(int n, int block) const;
  /// v <= f - 2^-n on the whole column block.
  bool receiver_ok(int n, int block) const;
  /// Receiver content is a proper subset of the donor content.
  bool subset_ok(const SwapMove& m) const;
  /// f stays majorized by v after the move.
  bool majorization_kept(const SwapMove& m) const;
  bool swappable(const SwapMove& m) const;

  /// f currently majorized by v.
  bool majorized() const { return dominated(hist_); }

  SwapRecord apply(const SwapMove& m);

  /// ||f - v||_1 in area units.
  std::int64_t l1_units() const;
  Dyadic l1() const;

 private:
  bool dominated(const std::vector<std::int64_t>& hist) const;
  void recount_column(Eigen::Index c);

  DyadicSet set_;
  GridParams p_;
  std::vector<std::int64_t> f_col_;      // f per column, value units
  std::vector<std::int64_t> f_prefix_;   // area under sorted f up to column boundaries
  std::vector<std::int64_t> f_sorted_;   // f per column, nonincreasing
  std::vector<std::int32_t> count_;      // cells covering each sub-unit
  std::vector<std::int64_t> hist_;       // sub-units per coverage count
};

}  // namespace xsect::detail
