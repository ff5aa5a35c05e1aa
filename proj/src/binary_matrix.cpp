#include "xsect/binary_matrix.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace xsect {
namespace {

void require_feasible(const Margins& m) {
  auto report = check_gale_ryser(Partition(m.row_targets), Partition(m.col_targets));
  if (!report.feasible()) throw InfeasibleError(std::move(report));
}

// Column sums majorize the (sorted) targets: every prefix of the sorted sums
// dominates the matching prefix of the sorted targets.
bool majorizes(std::vector<std::int64_t> sums, std::vector<std::int64_t> targets) {
  std::sort(sums.begin(), sums.end(), std::greater<>());
  std::sort(targets.begin(), targets.end(), std::greater<>());
  std::int64_t a = 0;
  std::int64_t b = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    a += sums[i];
    b += targets[i];
    if (a < b) return false;
  }
  return true;
}

}  // namespace

BinaryMatrix::BinaryMatrix(BitGrid bits) : bits_(std::move(bits)) {
  if ((bits_.array() > 1).any()) throw std::invalid_argument("BinaryMatrix: entries must be 0 or 1");
}

std::vector<std::int64_t> row_sums(const BinaryMatrix& a) {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> s = a.bits().cast<std::int64_t>().rowwise().sum();
  return {s.data(), s.data() + s.size()};
}

std::vector<std::int64_t> col_sums(const BinaryMatrix& a) {
  Eigen::Matrix<std::int64_t, 1, Eigen::Dynamic> s = a.bits().cast<std::int64_t>().colwise().sum();
  return {s.data(), s.data() + s.size()};
}

BinaryMatrix ryser_construct(const Margins& margins) {
  require_feasible(margins);
  const auto rows = static_cast<Eigen::Index>(margins.row_targets.size());
  const auto cols = static_cast<Eigen::Index>(margins.col_targets.size());
  BinaryMatrix out(rows, cols);

  std::vector<Eigen::Index> col_order(static_cast<std::size_t>(cols));
  std::iota(col_order.begin(), col_order.end(), 0);
  std::stable_sort(col_order.begin(), col_order.end(), [&](auto a, auto b) {
    return margins.col_targets[static_cast<std::size_t>(a)] >
           margins.col_targets[static_cast<std::size_t>(b)];
  });

  std::vector<std::int64_t> demand = margins.row_targets;
  std::vector<Eigen::Index> row_order(static_cast<std::size_t>(rows));
  for (auto c : col_order) {
    std::iota(row_order.begin(), row_order.end(), 0);
    std::stable_sort(row_order.begin(), row_order.end(), [&](auto a, auto b) {
      return demand[static_cast<std::size_t>(a)] > demand[static_cast<std::size_t>(b)];
    });
    auto need = margins.col_targets[static_cast<std::size_t>(c)];
    for (auto r : row_order) {
      if (need == 0) break;
      if (demand[static_cast<std::size_t>(r)] == 0) break;
      out.set(r, c, true);
      --demand[static_cast<std::size_t>(r)];
      --need;
    }
  }

  if (row_sums(out) != margins.row_targets || col_sums(out) != margins.col_targets) {
    throw std::logic_error("ryser_construct: margins not reached on feasible input");
  }
  return out;
}

std::optional<BinaryMatrix> brute_force_realize(const Margins& margins) {
  const auto rows = static_cast<Eigen::Index>(margins.row_targets.size());
  const auto cols = static_cast<Eigen::Index>(margins.col_targets.size());
  if (rows * cols > kBruteForceMaxCells) {
    throw InstanceTooLarge("brute_force_realize: more than 20 cells");
  }
  if (std::any_of(margins.row_targets.begin(), margins.row_targets.end(), [](auto x) { return x < 0; }) ||
      std::any_of(margins.col_targets.begin(), margins.col_targets.end(), [](auto x) { return x < 0; })) {
    return std::nullopt;
  }

  // Every row pattern with the right popcount, tried in order; the column
  // budget prunes branches that already overshoot.
  std::vector<std::uint32_t> chosen(static_cast<std::size_t>(rows), 0);
  std::vector<std::int64_t> remaining = margins.col_targets;
  const std::uint32_t limit = std::uint32_t{1} << cols;

  std::function<bool(Eigen::Index)> search = [&](Eigen::Index r) -> bool {
    if (r == rows) {
      return std::all_of(remaining.begin(), remaining.end(), [](auto x) { return x == 0; });
    }
    const auto want = margins.row_targets[static_cast<std::size_t>(r)];
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      if (std::popcount(mask) != want) continue;
      bool ok = true;
      for (Eigen::Index c = 0; c < cols; ++c) {
        if ((mask >> c) & 1u) ok = ok && remaining[static_cast<std::size_t>(c)] > 0;
      }
      if (!ok) continue;
      for (Eigen::Index c = 0; c < cols; ++c) {
        if ((mask >> c) & 1u) --remaining[static_cast<std::size_t>(c)];
      }
      chosen[static_cast<std::size_t>(r)] = mask;
      if (search(r + 1)) return true;
      for (Eigen::Index c = 0; c < cols; ++c) {
        if ((mask >> c) & 1u) ++remaining[static_cast<std::size_t>(c)];
      }
    }
    return false;
  };

  if (!search(0)) return std::nullopt;
  BinaryMatrix out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) out.set(r, c, (chosen[static_cast<std::size_t>(r)] >> c) & 1u);
  }
  return out;
}

SwapConstruction swap_construct_with_moves(const Margins& margins) {
  require_feasible(margins);
  const auto rows = static_cast<Eigen::Index>(margins.row_targets.size());
  const auto cols = static_cast<Eigen::Index>(margins.col_targets.size());
  const auto& target = margins.col_targets;

  SwapConstruction result{BinaryMatrix(rows, cols), {}};
  auto& a = result.matrix;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < margins.row_targets[static_cast<std::size_t>(r)]; ++c) a.set(r, c, true);
  }

  auto sums = col_sums(a);
  auto idx = [](Eigen::Index i) { return static_cast<std::size_t>(i); };
  while (sums != target) {
    bool moved = false;
    for (Eigen::Index r = 0; r < rows && !moved; ++r) {
      for (Eigen::Index d = 0; d < cols && !moved; ++d) {
        if (sums[idx(d)] <= target[idx(d)] || !a(r, d)) continue;
        for (Eigen::Index k = 0; k < cols && !moved; ++k) {
          if (k == d || sums[idx(k)] >= target[idx(k)] || a(r, k)) continue;
          auto next = sums;
          --next[idx(d)];
          ++next[idx(k)];
          if (!majorizes(next, target)) continue;
          a.set(r, d, false);
          a.set(r, k, true);
          sums = std::move(next);
          result.moves.push_back({r, d, k});
          moved = true;
        }
      }
    }
    if (!moved) throw std::logic_error("swap_construct: stalled on feasible input");
  }
  return result;
}

}  // namespace xsect
