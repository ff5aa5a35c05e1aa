#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xsect/dyadic_number.hpp"
#include "xsect/step_function.hpp"

namespace xsect {

/// Nonincreasing sequence of positive integers (zeros are stripped).
class Partition {
 public:
  Partition() = default;
  /// Sorts the input (nonincreasing) and drops zeros; throws
  /// std::invalid_argument on negative parts.
  explicit Partition(std::vector<std::int64_t> parts);
  Partition(std::initializer_list<std::int64_t> parts)
      : Partition(std::vector<std::int64_t>(parts)) {}

  const std::vector<std::int64_t>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  std::int64_t operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  std::int64_t total() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::int64_t> parts_;
};

/// Transposed Young diagram: result[i] = #{parts >= i+1}.
Partition conjugate(const Partition& p);

enum class Verdict { feasible, infeasible_norm, infeasible_majorization };

std::string to_string(Verdict v);

/// First point where a prefix inequality `lhs <= rhs` fails.
struct Witness {
  Dyadic point;  // t for the continuous test, m (1-based) for the discrete one
  Dyadic lhs;
  Dyadic rhs;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct FeasibilityReport {
  Verdict verdict = Verdict::feasible;
  std::optional<Witness> witness;  // set iff verdict == infeasible_majorization
  Dyadic lhs_total;                // total mass of the first argument
  Dyadic rhs_total;                // total mass of the second argument

  bool feasible() const { return verdict == Verdict::feasible; }
};

/// Gale–Ryser test for row sums `p` and column sums `q`.
FeasibilityReport check_gale_ryser(const Partition& p, const Partition& q);

/// Continuous test for a vertical section `f` and horizontal section `g`:
/// equal integrals and, for all t > 0, int_0^t f* <= int_0^t lambda_g.
///
/// Both sides are piecewise linear in t, so checking at the union of their
/// breakpoints is exact and complete.
FeasibilityReport check_hlp(const StepFunction& f, const StepFunction& g);

/// The same test with the roles of f and g exchanged:
/// int_0^r g* <= int_0^r lambda_f for all r > 0.
FeasibilityReport check_hlp_symmetric(const StepFunction& f, const StepFunction& g);

/// Step-function embedding of a partition on a grid of 2^log2_cells cells:
/// part i becomes a plateau of height parts[i] 2^-log2_cells on cell i.
StepFunction embed_partition(const Partition& p, int log2_cells);

}  // namespace xsect
