#include "xsect/report.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "xsect/errors.hpp"

namespace xsect {
namespace {

using nlohmann::json;

Dyadic integral_over(const StepFunction& h, const Dyadic& a, const Dyadic& b) {
  Dyadic total;
  const auto& bp = h.breakpoints();
  for (std::size_t i = 0; i < h.pieces(); ++i) {
    const Dyadic lo = max(bp[i], a);
    const Dyadic hi = min(bp[i + 1], b);
    if (lo < hi) total += (hi - lo) * h.values()[i];
  }
  return total;
}

// Measure of A \ A' (cells are left-aligned, so per-cell it is the width drop).
Dyadic removed_measure(const DyadicSet& a, const DyadicSet& next) {
  const std::int64_t units = (a.fill() - next.fill()).cwiseMax(0).cast<std::int64_t>().sum();
  return Dyadic::from_parts(units, a.params().depth + a.params().log2_unit());
}

std::string describe(const SwapMove& m) {
  std::ostringstream os;
  os << "(n=" << m.generation << ", i=" << m.row << ", j=" << m.donor << ", k=" << m.receiver << ")";
  return os.str();
}

// Relation of f, v_A and v_A' on column class X^n_l, sampled on the sub-unit grid.
std::optional<std::string> column_relation_violation(const StepFunction& f, const StepFunction& v,
                                                     const StepFunction& v_next, const GridParams& p,
                                                     int n) {
  const int blocks = 1 << n;
  const std::int64_t per_block = std::int64_t{1} << (p.log2_unit() - n);
  for (int l = 0; l < blocks; ++l) {
    std::vector<Dyadic> xs;
    for (std::int64_t s = 0; s < per_block; ++s) xs.push_back(Dyadic::from_parts(l * per_block + s, p.log2_unit()));
    const bool below = std::all_of(xs.begin(), xs.end(), [&](auto& x) { return f(x) >= v(x); });
    const bool above = std::all_of(xs.begin(), xs.end(), [&](auto& x) { return f(x) <= v(x); });
    for (const auto& x : xs) {
      bool ok;
      if (below) {
        ok = f(x) >= v_next(x) && v_next(x) >= v(x);
      } else if (above) {
        ok = f(x) <= v_next(x) && v_next(x) <= v(x);
      } else {
        ok = v_next(x) == v(x);
      }
      if (!ok) return "column class " + std::to_string(l + 1) + " at x=" + x.to_string();
    }
  }
  return std::nullopt;
}

}  // namespace

Dyadic residual(const DyadicSet& e, const StepFunction& f) {
  if (!f.constant_on_grid(e.params().log2_unit())) {
    throw GridMismatch("residual: f is not constant on the set's sub-cell grid");
  }
  return l1_distance(f, vertical_section(e));
}

bool rearrangement_dominated(const StepFunction& f, const StepFunction& v) {
  const RearrPrimitive lhs(f);
  const RearrPrimitive rhs(v);
  std::vector<Dyadic> ts = lhs.kinks();
  ts.insert(ts.end(), rhs.kinks().begin(), rhs.kinks().end());
  return std::all_of(ts.begin(), ts.end(), [&](const Dyadic& t) { return lhs(t) <= rhs(t); });
}

AuditResult audit_trace(const Trace& trace, const StepFunction& f, const StepFunction& g,
                        GridParams params) {
  AuditResult result;
  DyadicSet a = initial_set(g, params);
  StepFunction v = vertical_section(a);
  StepFunction h = horizontal_section(a);

  auto fail = [&](std::size_t idx, std::string invariant, std::string detail) {
    result.violation = AuditViolation{idx, std::move(invariant), std::move(detail)};
    return result;
  };

  for (std::size_t idx = 0; idx < trace.size(); ++idx) {
    const auto& rec = trace[idx];
    const auto& m = rec.move;
    const std::string where = describe(m);
    DyadicSet next;
    try {
      next = swap(a, m);
    } catch (const std::exception& e) {
      return fail(idx, "move_in_range", where + ": " + e.what());
    }
    const StepFunction v_next = vertical_section(next);
    const StepFunction h_next = horizontal_section(next);

    if (h_next != h || next.measure() != a.measure()) {
      return fail(idx, "horizontal_section_preserved", where);
    }

    const Dyadic width = pow2_inverse(m.generation);
    const Dyadic donor_lo = Dyadic(m.donor - 1) * width;
    const Dyadic recv_lo = Dyadic(m.receiver - 1) * width;
    const Dyadic lost = removed_measure(a, next);
    const Dyadic gained = removed_measure(next, a);
    if (lost != integral_over(v, donor_lo, donor_lo + width) - integral_over(v_next, donor_lo, donor_lo + width)) {
      return fail(idx, "removed_mass_matches_donor_drop", where);
    }
    if (gained != integral_over(v_next, recv_lo, recv_lo + width) - integral_over(v, recv_lo, recv_lo + width)) {
      return fail(idx, "added_mass_matches_receiver_gain", where);
    }

    const Dyadic sym = symmetric_difference(a, next);
    const Dyadic drop = l1_distance(f, v) - l1_distance(f, v_next);
    if (drop != sym) {
      return fail(idx, "l1_drop_equals_symmetric_difference",
                  where + ": drop " + drop.to_string() + " vs " + sym.to_string());
    }
    if (rec.delta_l1 != drop) {
      return fail(idx, "claimed_delta_l1",
                  where + ": claimed " + rec.delta_l1.to_string() + ", replayed " + drop.to_string());
    }
    if (rec.sym_diff != sym) {
      return fail(idx, "claimed_sym_diff",
                  where + ": claimed " + rec.sym_diff.to_string() + ", replayed " + sym.to_string());
    }
    if (auto bad = column_relation_violation(f, v, v_next, params, m.generation)) {
      return fail(idx, "column_monotonicity", where + ": " + *bad);
    }
    if (!rearrangement_dominated(f, v_next)) {
      return fail(idx, "majorization_preserved", where);
    }

    a = std::move(next);
    v = v_next;
    h = h_next;
    ++result.records_checked;
  }
  return result;
}

json to_json(const FeasibilityReport& report) {
  json j{{"verdict", to_string(report.verdict)},
         {"lhs_total", report.lhs_total.to_string()},
         {"rhs_total", report.rhs_total.to_string()}};
  if (report.witness) {
    j["witness"] = {{"point", report.witness->point.to_string()},
                    {"lhs", report.witness->lhs.to_string()},
                    {"rhs", report.witness->rhs.to_string()}};
  }
  return j;
}

json to_json(const TraceSummary& summary) {
  json gens = json::array();
  for (const auto& g : summary.generations) {
    gens.push_back({{"n", g.generation},
                    {"swaps", g.swap_count},
                    {"residual_l1", g.residual_l1.to_string()},
                    {"sym_diff_total", g.sym_diff_total.to_string()},
                    {"set_change", g.set_change.to_string()}});
  }
  return {{"N", summary.params.depth},
          {"K", summary.params.refinement},
          {"feasibility", to_json(summary.feasibility)},
          {"initial_residual", summary.initial_residual.to_string()},
          {"generations", gens},
          {"final_residual", summary.final_residual.to_string()}};
}

void write_text(std::ostream& os, const FeasibilityReport& report) {
  os << "verdict: " << to_string(report.verdict) << '\n';
  os << "totals: " << report.lhs_total << " vs " << report.rhs_total << '\n';
  if (report.witness) {
    os << "witness: at " << report.witness->point << ", " << report.witness->lhs << " > "
       << report.witness->rhs << '\n';
  }
}

void write_text(std::ostream& os, const TraceSummary& summary) {
  os << "grid: N=" << summary.params.depth << " K=" << summary.params.refinement << '\n';
  os << "initial residual: " << summary.initial_residual << " (" << summary.initial_residual.to_double()
     << ")\n";
  for (const auto& g : summary.generations) {
    os << "generation " << g.generation << ": swaps=" << g.swap_count << " residual=" << g.residual_l1
       << " (" << g.residual_l1.to_double() << ") moved=" << g.set_change << '\n';
  }
  os << "final residual: " << summary.final_residual << " (" << summary.final_residual.to_double()
     << ")\n";
}

}  // namespace xsect
