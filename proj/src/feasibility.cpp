#include "xsect/feasibility.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace xsect {

Partition::Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
  if (std::any_of(parts_.begin(), parts_.end(), [](auto x) { return x < 0; })) {
    throw std::invalid_argument("Partition: negative part");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

std::int64_t Partition::total() const {
  return std::accumulate(parts_.begin(), parts_.end(), std::int64_t{0});
}

Partition conjugate(const Partition& p) {
  std::vector<std::int64_t> out(p.empty() ? 0 : static_cast<std::size_t>(p[0]), 0);
  for (auto part : p.parts()) {
    for (std::int64_t i = 0; i < part; ++i) ++out[static_cast<std::size_t>(i)];
  }
  return Partition(std::move(out));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::feasible:
      return "feasible";
    case Verdict::infeasible_norm:
      return "infeasible_norm";
    case Verdict::infeasible_majorization:
      return "infeasible_majorization";
  }
  return "unknown";
}

FeasibilityReport check_gale_ryser(const Partition& p, const Partition& q) {
  FeasibilityReport report;
  report.lhs_total = Dyadic(p.total());
  report.rhs_total = Dyadic(q.total());
  if (report.lhs_total != report.rhs_total) {
    report.verdict = Verdict::infeasible_norm;
    return report;
  }
  const Partition conj = conjugate(p);
  const std::size_t len = std::max(q.size(), conj.size());
  std::int64_t q_prefix = 0;
  std::int64_t conj_prefix = 0;
  for (std::size_t m = 0; m < len; ++m) {
    q_prefix += q[m];
    conj_prefix += conj[m];
    if (q_prefix > conj_prefix) {
      report.verdict = Verdict::infeasible_majorization;
      report.witness = Witness{Dyadic(static_cast<std::int64_t>(m + 1)), Dyadic(q_prefix),
                               Dyadic(conj_prefix)};
      return report;
    }
  }
  return report;
}

namespace {

// Checks int_0^t a* <= int_0^t lambda_b at every kink of either primitive.
FeasibilityReport majorization_check(const StepFunction& a, const StepFunction& b) {
  FeasibilityReport report;
  report.lhs_total = a.integral();
  report.rhs_total = b.integral();
  if (report.lhs_total != report.rhs_total) {
    report.verdict = Verdict::infeasible_norm;
    return report;
  }
  const RearrPrimitive lhs_of(a);
  const DistPrimitive rhs_of(b);
  std::vector<Dyadic> points = lhs_of.kinks();
  points.insert(points.end(), rhs_of.kinks().begin(), rhs_of.kinks().end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const auto& t : points) {
    Dyadic lhs = lhs_of(t);
    Dyadic rhs = rhs_of(t);
    if (lhs > rhs) {
      report.verdict = Verdict::infeasible_majorization;
      report.witness = Witness{t, lhs, rhs};
      return report;
    }
  }
  return report;
}

}  // namespace

FeasibilityReport check_hlp(const StepFunction& f, const StepFunction& g) {
  return majorization_check(f, g);
}

FeasibilityReport check_hlp_symmetric(const StepFunction& f, const StepFunction& g) {
  auto report = majorization_check(g, f);
  std::swap(report.lhs_total, report.rhs_total);
  return report;
}

StepFunction embed_partition(const Partition& p, int log2_cells) {
  const std::size_t cells = std::size_t{1} << log2_cells;
  if (p.size() > cells || (!p.empty() && p[0] > static_cast<std::int64_t>(cells))) {
    throw std::invalid_argument("embed_partition: partition does not fit the grid");
  }
  std::vector<Dyadic> values(cells);
  for (std::size_t i = 0; i < p.size(); ++i) values[i] = Dyadic::from_parts(p[i], log2_cells);
  return StepFunction::uniform(values, log2_cells);
}

}  // namespace xsect
