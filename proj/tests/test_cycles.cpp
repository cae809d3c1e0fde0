#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "ramsey/cycles.hpp"

using namespace ramsey;

namespace {

ColouredGraph from_edges(int n, Colour c,
                         const std::vector<std::pair<int, int>>& es) {
  std::vector<EdgeSpec> specs;
  for (auto [u, v] : es) specs.push_back({u, v, ColourSet::of(c)});
  return ColouredGraph::build(n, specs);
}

ColouredGraph mono_complete(int n, Colour c) {
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j, ColourSet::of(c)});
  return ColouredGraph::build(n, es);
}

ColouredGraph random_coloured(std::mt19937_64& rng, int n, double p) {
  std::vector<EdgeSpec> es;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> bits(1, 7);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit(rng) < p)
        es.push_back({i, j, ColourSet(std::uint8_t(bits(rng)))});
  return ColouredGraph::build(n, es);
}

// Enumerates the lengths of all simple cycles of one colour (oracle).
std::set<int> brute_cycle_lengths(const ColouredGraph& g, Colour c) {
  std::set<int> lengths;
  std::vector<int> path;
  std::vector<char> on(g.size(), 0);
  std::function<void(int, int)> rec = [&](int start, int u) {
    for (int v = 0; v < g.size(); ++v) {
      if (!g.has(c, u, v)) continue;
      if (v == start && path.size() >= 3) lengths.insert(int(path.size()));
      if (v <= start || on[v]) continue;
      on[v] = 1;
      path.push_back(v);
      rec(start, v);
      path.pop_back();
      on[v] = 0;
    }
  };
  for (int s = 0; s < g.size(); ++s) {
    path = {s};
    std::fill(on.begin(), on.end(), 0);
    on[s] = 1;
    rec(s, s);
  }
  return lengths;
}

bool valid_cycle(const ColouredGraph& g, Colour c, const std::vector<int>& cy,
                 int expect_len_at_least) {
  if (int(cy.size()) < expect_len_at_least) return false;
  std::set<int> distinct(cy.begin(), cy.end());
  if (distinct.size() != cy.size()) return false;
  for (size_t i = 0; i < cy.size(); ++i)
    if (!g.has(c, cy[i], cy[(i + 1) % cy.size()])) return false;
  return true;
}

}  // namespace

TEST_CASE("exact cycle search on small shapes") {
  auto c5 = from_edges(5, Colour::Red,
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  auto hit = find_mono_cycle(c5, {Colour::Red, 5, CycleQuery::Mode::ExactLength});
  REQUIRE(hit.cycle.has_value());
  CHECK(valid_cycle(c5, Colour::Red, *hit.cycle, 5));

  auto miss = find_mono_cycle(c5, {Colour::Red, 4, CycleQuery::Mode::ExactLength});
  CHECK_FALSE(miss.cycle.has_value());
  CHECK_FALSE(miss.budget_exceeded);

  auto k6 = mono_complete(6, Colour::Blue);
  auto ham = find_mono_cycle(k6, {Colour::Blue, 6, CycleQuery::Mode::ExactLength});
  REQUIRE(ham.cycle.has_value());
  CHECK(valid_cycle(k6, Colour::Blue, *ham.cycle, 6));
}

TEST_CASE("cycle search is exhaustive: agrees with enumeration") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_coloured(rng, 8, 0.45);
    for (Colour c : kColours) {
      auto lengths = brute_cycle_lengths(g, c);
      for (int len = 3; len <= g.size(); ++len) {
        auto res =
            find_mono_cycle(g, {c, len, CycleQuery::Mode::ExactLength});
        REQUIRE_FALSE(res.budget_exceeded);
        CHECK(res.cycle.has_value() == (lengths.count(len) > 0));
        if (res.cycle) CHECK(valid_cycle(g, c, *res.cycle, len));
      }
      // at-least mode finds the smallest witness at or above the target
      for (int len = 3; len <= g.size(); ++len) {
        auto res = find_mono_cycle(g, {c, len, CycleQuery::Mode::AtLeast});
        bool expected = false;
        for (int l2 = len; l2 <= g.size(); ++l2)
          expected |= lengths.count(l2) > 0;
        CHECK(res.cycle.has_value() == expected);
      }
    }
  }
}

TEST_CASE("budget exhaustion is distinct from absence") {
  auto k9 = mono_complete(9, Colour::Red);
  auto res = find_mono_cycle(k9, {Colour::Red, 9, CycleQuery::Mode::ExactLength}, 5);
  CHECK(res.budget_exceeded);
  CHECK_FALSE(res.cycle.has_value());
}

TEST_CASE("dirac cycle constructs a Hamiltonian cycle") {
  auto k5 = mono_complete(5, Colour::Green);
  auto cy = dirac_cycle(k5, Colour::Green, VertexSet::range(0, 5));
  CHECK(cy.size() == 5);
  CHECK(valid_cycle(k5, Colour::Green, cy, 5));

  auto c4 = from_edges(4, Colour::Green, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto cy4 = dirac_cycle(c4, Colour::Green, VertexSet::range(0, 4));
  CHECK(cy4.size() == 4);

  auto p4 = from_edges(4, Colour::Green, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_THROWS_WITH_AS(
      dirac_cycle(p4, Colour::Green, VertexSet::range(0, 4)),
      doctest::Contains("degree"), PreconditionError);
}

TEST_CASE("dirac on random degree-satisfying graphs") {
  std::mt19937_64 rng(41);
  int built = 0;
  for (int trial = 0; trial < 300 && built < 40; ++trial) {
    int n = 4 + int(rng() % 6);
    auto g = random_coloured(rng, n, 0.85);
    auto scope = VertexSet::range(0, n);
    bool ok = true;
    for (int v = 0; v < n; ++v)
      if (2 * g.degree(Colour::Red, v) < n) ok = false;
    if (!ok) continue;
    ++built;
    auto cy = dirac_cycle(g, Colour::Red, scope);
    CHECK(int(cy.size()) == n);
    CHECK(valid_cycle(g, Colour::Red, cy, n));
  }
  CHECK(built > 10);
}

TEST_CASE("edge-count cycle lemma") {
  auto k5 = mono_complete(5, Colour::Red);
  auto cy = erdos_gallai_cycle(k5, Colour::Red, 4);
  CHECK(cy.size() >= 4);
  CHECK(valid_cycle(k5, Colour::Red, cy, 4));

  auto c4 = from_edges(4, Colour::Red, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK_THROWS_AS(erdos_gallai_cycle(c4, Colour::Red, 4), PreconditionError);

  // K6 minus perfect matching: 12 edges >= (4-1)(6-1)/2+1 = 8.5 -> 9
  std::vector<EdgeSpec> es;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (j != i + 3) es.push_back({i, j, ColourSet::of(Colour::Red)});
  auto k6m = ColouredGraph::build(6, es);
  auto cy2 = erdos_gallai_cycle(k6m, Colour::Red, 4);
  CHECK(cy2.size() >= 4);
  CHECK(valid_cycle(k6m, Colour::Red, cy2, 4));
}
