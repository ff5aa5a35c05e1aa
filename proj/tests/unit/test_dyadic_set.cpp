#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "xsect/dyadic_set.hpp"
#include "xsect/errors.hpp"
#include "xsect/feasibility.hpp"

using namespace xsect;
using oracle::Q;

namespace {

Dyadic d(std::int64_t n, int e) { return Dyadic::from_parts(n, e); }

StepFunction columns(std::initializer_list<std::int64_t> units, int log2_cells, int log2_unit) {
  std::vector<Dyadic> vals;
  for (auto u : units) vals.push_back(d(u, log2_unit));
  return StepFunction::uniform(vals, log2_cells);
}

}  // namespace

TEST_SUITE("dyadic_set") {
  TEST_CASE("grid parameters") {
    CHECK_THROWS(GridParams(0, 1));
    CHECK_THROWS(GridParams(2, -1));
    CHECK_THROWS(GridParams(20, 11));
    CHECK_NOTHROW(GridParams(20, 10));
    const GridParams p(3, 2);
    CHECK(p.cells() == 8);
    CHECK(p.units_per_cell() == 4);
    CHECK(p.units() == 32);
  }

  TEST_CASE("construction validates the fill") {
    const GridParams p(1, 1);
    CHECK_THROWS(DyadicSet(p, FillGrid::Zero(3, 3)));
    FillGrid w = FillGrid::Zero(2, 2);
    w(0, 0) = 3;
    CHECK_THROWS(DyadicSet(p, w));
    w(0, 0) = -1;
    CHECK_THROWS(DyadicSet(p, w));
    CHECK(DyadicSet::full(p).measure() == Dyadic(1));
    CHECK(DyadicSet(p).measure() == Dyadic(0));
  }

  TEST_CASE("hypograph start set") {
    const GridParams p(2, 2);
    const DyadicSet e = initial_set(StepFunction::constant(d(5, 4)), p);
    for (Eigen::Index r = 0; r < 4; ++r) {
      CHECK(e(r, 0) == 4);
      CHECK(e(r, 1) == 1);
      CHECK(e(r, 2) == 0);
      CHECK(e(r, 3) == 0);
    }
    CHECK(initial_set(StepFunction::constant(0), p) == DyadicSet(p));
    CHECK(initial_set(StepFunction::constant(1), p) == DyadicSet::full(p));
    CHECK_THROWS_AS(initial_set(StepFunction::constant(d(1, 5)), p), QuantizationError);
    CHECK_THROWS_AS(initial_set(StepFunction::constant(2), p), QuantizationError);
    const StepFunction ragged({Dyadic(0), d(1, 3), Dyadic(1)}, {Dyadic(1), Dyadic(0)});
    CHECK_THROWS_AS(initial_set(ragged, p), QuantizationError);
  }

  TEST_CASE("hypograph sections are g and its distribution function") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const GridParams p(1 + trial % 3, trial % 4);
      const StepFunction g = oracle::random_uniform(rng, p.depth, p.log2_unit(), p.units());
      const DyadicSet e = initial_set(g, p);
      CHECK(horizontal_section(e) == g);
      const auto v = oracle::sample(vertical_section(e), p.log2_unit());
      const auto gs = oracle::sample(g, p.depth);
      for (std::size_t u = 0; u < v.v.size(); ++u) {
        CHECK(v.v[u] == oracle::distribution(gs, Q(static_cast<long>(u)) / oracle::pow2(p.log2_unit())));
      }
    }
  }

  TEST_CASE("sections of arbitrary sets match the cell-by-cell oracle") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      const GridParams p(1 + trial % 3, trial % 3);
      const DyadicSet e = oracle::random_set(rng, p);
      const auto v = vertical_section(e);
      const auto h = horizontal_section(e);
      CHECK(oracle::sample(v, p.log2_unit()).v == oracle::vertical_units(e));
      CHECK(oracle::sample(h, p.depth).v == oracle::horizontal_samples(e).v);
      CHECK(v.integral() == e.measure());
      CHECK(h.integral() == e.measure());
      CHECK(v.constant_on_grid(p.log2_unit()));
      CHECK(h.constant_on_grid(p.depth));
    }
    const GridParams p(2, 1);
    CHECK(vertical_section(DyadicSet(p)) == StepFunction::constant(0));
    CHECK(horizontal_section(DyadicSet::full(p)) == StepFunction::constant(1));
    CHECK(vertical_section(DyadicSet::full(p)) == StepFunction::constant(1));
  }

  TEST_CASE("swap exchanges blocks") {
    const GridParams p(2, 2);
    const DyadicSet e = initial_set(StepFunction::constant(d(5, 4)), p);
    const DyadicSet s = swap(e, SwapMove{2, 1, 1, 4});
    CHECK(s(0, 0) == 0);
    CHECK(s(0, 1) == 1);
    CHECK(s(0, 2) == 0);
    CHECK(s(0, 3) == 4);
    CHECK(s(1, 0) == 4);
    CHECK(swap(e, SwapMove{2, 1, 3, 4}) == e);
    CHECK_THROWS_AS(swap(e, SwapMove{2, 1, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(swap(e, SwapMove{2, 5, 1, 2}), std::out_of_range);
    CHECK_THROWS_AS(swap(e, SwapMove{3, 1, 1, 2}), std::out_of_range);
    CHECK(symmetric_difference(e, s) == d(8, 6));
    CHECK(symmetric_difference(e, e) == Dyadic(0));
    CHECK_THROWS_AS(symmetric_difference(e, DyadicSet(GridParams(2, 1))), GridMismatch);
  }

  TEST_CASE("swaps match the oracle and preserve horizontal sections") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const GridParams p(1 + trial % 3, trial % 3);
      const DyadicSet e = oracle::random_set(rng, p);
      const int n = std::uniform_int_distribution<int>(1, p.depth)(rng);
      std::uniform_int_distribution<int> idx(1, 1 << n);
      SwapMove m{n, idx(rng), idx(rng), idx(rng)};
      if (m.donor == m.receiver) continue;
      const DyadicSet s = swap(e, m);
      CHECK(s == oracle::swapped(e, m));
      CHECK(horizontal_section(s) == horizontal_section(e));
      CHECK(s.measure() == e.measure());
      CHECK(swap(s, m) == e);
    }
  }

  TEST_CASE("swappability on hand-built fixtures") {
    const GridParams p(2, 2);
    const DyadicSet e = initial_set(StepFunction::constant(d(5, 4)), p);
    // Column deficit in the third column.
    const StepFunction f = columns({8, 4, 4, 4}, 2, 4);
    const SwapMove good{2, 1, 1, 3};
    const auto c = oracle::swap_conditions(e, f, good);
    CHECK(c.all());
    CHECK(is_swappable(e, f, good));

    const SwapMove thin_donor{2, 1, 2, 3};
    const auto c2 = oracle::swap_conditions(e, f, thin_donor);
    CHECK_FALSE(c2.donor);
    CHECK(c2.receiver);
    CHECK(c2.proper);
    CHECK(c2.majorized);
    CHECK_FALSE(is_swappable(e, f, thin_donor));

    // Two empty blocks never qualify.
    CHECK_FALSE(is_swappable(e, f, SwapMove{2, 1, 3, 4}));
    CHECK_FALSE(is_swappable(e, f, SwapMove{2, 9, 1, 3}));
    CHECK_THROWS_AS(is_swappable(e, f, SwapMove{2, 1, 3, 3}), std::invalid_argument);
  }

  TEST_CASE("swappability matches the condition-by-condition oracle") {
    std::mt19937_64 rng(21);
    int positives = 0;
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const GridParams p(1 + trial % 3, trial % 3);
      const auto [f, g] = oracle::random_feasible(rng, p);
      // Start from the hypograph and wander a little with random swaps that
      // keep f majorized.
      DyadicSet e = initial_set(g, p);
      for (int step = 0; step < 3; ++step) {
        const int n = std::uniform_int_distribution<int>(1, p.depth)(rng);
        std::uniform_int_distribution<int> idx(1, 1 << n);
        const SwapMove m{n, idx(rng), idx(rng), idx(rng)};
        if (m.donor == m.receiver) continue;
        if (oracle::swap_conditions(e, f, m).majorized) e = swap(e, m);
      }
      for (int n = 1; n <= p.depth; ++n) {
        const int b = 1 << n;
        for (int i = 1; i <= b; ++i) {
          for (int j = 1; j <= b; ++j) {
            for (int k = 1; k <= b; ++k) {
              if (j == k) continue;
              const SwapMove m{n, i, j, k};
              const bool want = oracle::swap_conditions(e, f, m).all();
              CHECK(is_swappable(e, f, m) == want);
              positives += want ? 1 : 0;
              ++checked;
            }
          }
        }
      }
    }
    CHECK(positives > 20);
    CHECK(checked > 1000);
  }
}
