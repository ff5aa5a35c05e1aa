#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "xsect/dyadic_number.hpp"
#include "xsect/dyadic_set.hpp"
#include "xsect/feasibility.hpp"

namespace xsect {

/// One executed swap with the two quantities it claims to have changed:
/// the drop in ||f - v||_1 and the measure of the symmetric difference.
struct SwapRecord {
  SwapMove move;
  Dyadic delta_l1;
  Dyadic sym_diff;

  friend bool operator==(const SwapRecord&, const SwapRecord&) = default;
};

using Trace = std::vector<SwapRecord>;

struct GenerationRecord {
  int generation = 0;
  std::int64_t swap_count = 0;
  Dyadic residual_l1;     // ||f - v_{E_n}||_1 after the generation
  Dyadic sym_diff_total;  // sum of |A Δ A'| over the generation's swaps
  Dyadic set_change;      // |E_{n-1} Δ E_n|
};

struct TraceSummary {
  GridParams params;
  Dyadic initial_residual;
  std::vector<GenerationRecord> generations;
  Dyadic final_residual;
  FeasibilityReport feasibility;
};

/// JSON lines: a header object with the grid, then one object per swap with
/// keys n, i, j, k, dl1, symdiff (values as exact "p/q" strings).
void write_trace(std::ostream& os, const GridParams& params, const Trace& trace);

/// Throws MalformedTrace on anything that is not a well-formed trace.
struct ParsedTrace {
  GridParams params;
  Trace records;
};
ParsedTrace read_trace(std::istream& is);

}  // namespace xsect
