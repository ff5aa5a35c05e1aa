#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "xsect/errors.hpp"
#include "xsect/feasibility.hpp"

namespace xsect {

using BitGrid = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense (0,1)-matrix. Margins are recomputed on demand.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(Eigen::Index rows, Eigen::Index cols) : bits_(BitGrid::Zero(rows, cols)) {}
  /// Throws std::invalid_argument if any entry is not 0 or 1.
  explicit BinaryMatrix(BitGrid bits);

  Eigen::Index rows() const { return bits_.rows(); }
  Eigen::Index cols() const { return bits_.cols(); }

  bool operator()(Eigen::Index r, Eigen::Index c) const { return bits_(r, c) != 0; }
  void set(Eigen::Index r, Eigen::Index c, bool on) { bits_(r, c) = on ? 1 : 0; }

  const BitGrid& bits() const { return bits_; }

  friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.bits_ == b.bits_;
  }

 private:
  BitGrid bits_;
};

std::vector<std::int64_t> row_sums(const BinaryMatrix& a);
std::vector<std::int64_t> col_sums(const BinaryMatrix& a);

/// Margin targets with explicit dimensions: the matrix has
/// `row_targets.size()` rows and `col_targets.size()` columns. Order is kept,
/// unlike Partition.
struct Margins {
  std::vector<std::int64_t> row_targets;
  std::vector<std::int64_t> col_targets;
};

/// Greedy fill: columns in nonincreasing target order, each column's ones go
/// to the rows with the largest remaining demand (ties to the lowest row).
/// Throws InfeasibleError when the margins fail the Gale–Ryser test.
BinaryMatrix ryser_construct(const Margins& margins);

/// Exhaustive search over all matrices of the given shape; independent of any
/// realizability theorem. Throws InstanceTooLarge when rows*cols > 20.
std::optional<BinaryMatrix> brute_force_realize(const Margins& margins);

inline constexpr Eigen::Index kBruteForceMaxCells = 20;

/// Moves a one within row `row` from column `donor` to column `receiver`.
struct MatrixMove {
  Eigen::Index row;
  Eigen::Index donor;
  Eigen::Index receiver;
};

struct SwapConstruction {
  BinaryMatrix matrix;
  std::vector<MatrixMove> moves;
};

/// Left-aligned start (row r holds its first row_targets[r] ones), then
/// single-row moves from an over-full to an under-full column that keep the
/// column sums majorizing the targets. Throws InfeasibleError when the margins
/// fail the Gale–Ryser test.
SwapConstruction swap_construct_with_moves(const Margins& margins);

inline BinaryMatrix swap_construct(const Margins& margins) {
  return swap_construct_with_moves(margins).matrix;
}

}  // namespace xsect
