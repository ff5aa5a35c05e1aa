#include "xsect/reconstruct.hpp"

#include <algorithm>

#include "swap_engine.hpp"
#include "xsect/binary_matrix.hpp"
#include "xsect/errors.hpp"
#include "xsect/feasibility.hpp"

namespace xsect {
namespace {

// First swappable move in (i, j, k) order, if any.
std::optional<SwapMove> first_swappable(const detail::SwapEngine& engine, int n) {
  const int blocks = 1 << n;
  std::vector<int> donors;
  std::vector<int> receivers;
  for (int b = 1; b <= blocks; ++b) {
    if (engine.donor_ok(n, b)) donors.push_back(b);
    if (engine.receiver_ok(n, b)) receivers.push_back(b);
  }
  if (donors.empty() || receivers.empty()) return std::nullopt;
  for (int i = 1; i <= blocks; ++i) {
    for (int j : donors) {
      for (int k : receivers) {
        SwapMove m{n, i, j, k};
        if (engine.subset_ok(m) && engine.majorization_kept(m)) return m;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

OptimizedGeneration optimize_generation_traced(const DyadicSet& e, const StepFunction& f, int n) {
  if (n < 1 || n > e.params().depth) throw std::out_of_range("optimize_generation: generation");
  detail::SwapEngine engine(e, f);
  Trace swaps;
  while (auto m = first_swappable(engine, n)) swaps.push_back(engine.apply(*m));
  return {engine.set(), std::move(swaps)};
}

Reconstruction reconstruct(const StepFunction& f, const StepFunction& g, GridParams params) {
  detail::column_units(f, params, "f");
  DyadicSet current = initial_set(g, params);
  auto feasibility = check_hlp(f, g);
  if (!feasibility.feasible()) throw InfeasibleError(feasibility);

  Reconstruction out;
  out.summary.params = params;
  out.summary.feasibility = feasibility;
  detail::SwapEngine engine(current, f);
  out.summary.initial_residual = engine.l1();

  for (int n = 1; n <= params.depth; ++n) {
    const DyadicSet before = engine.set();
    GenerationRecord rec;
    rec.generation = n;
    while (auto m = first_swappable(engine, n)) {
      auto record = engine.apply(*m);
      rec.sym_diff_total += record.sym_diff;
      ++rec.swap_count;
      out.trace.push_back(record);
    }
    rec.residual_l1 = engine.l1();
    rec.set_change = symmetric_difference(before, engine.set());
    out.summary.generations.push_back(rec);
  }
  out.set = engine.set();
  out.summary.final_residual = engine.l1();
  return out;
}

std::optional<DyadicSet> realize_exact(const StepFunction& f, const StepFunction& g, GridParams params) {
  auto whole_cells = [&](const StepFunction& h) -> std::optional<std::vector<std::int64_t>> {
    if (!h.constant_on_grid(params.depth)) return std::nullopt;
    std::vector<std::int64_t> out;
    for (const auto& v : h.sample(params.depth)) {
      if (!v.is_multiple_of_pow2(params.depth) || v > Dyadic(1)) return std::nullopt;
      out.push_back(v.scaled_to(params.depth));
    }
    return out;
  };
  auto cols = whole_cells(f);
  auto rows = whole_cells(g);
  if (!cols || !rows) return std::nullopt;

  const BinaryMatrix a = ryser_construct(Margins{*rows, *cols});
  FillGrid fill = a.bits().cast<std::int32_t>() * params.units_per_cell();
  return DyadicSet(params, std::move(fill));
}

}  // namespace xsect
