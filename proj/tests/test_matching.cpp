#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "ramsey/matching.hpp"

using namespace ramsey;

namespace {

ColouredGraph mono_complete(int n, Colour c) {
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j, ColourSet::of(c)});
  return ColouredGraph::build(n, es);
}

ColouredGraph from_edges(int n, Colour c,
                         const std::vector<std::pair<int, int>>& es) {
  std::vector<EdgeSpec> specs;
  for (auto [u, v] : es) specs.push_back({u, v, ColourSet::of(c)});
  return ColouredGraph::build(n, specs);
}

ColouredGraph random_coloured(std::mt19937_64& rng, int n, double p_edge) {
  std::vector<EdgeSpec> es;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> bits(1, 7);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit(rng) < p_edge)
        es.push_back({i, j, ColourSet(std::uint8_t(bits(rng)))});
  return ColouredGraph::build(n, es);
}

// Exhaustive maximum matching by recursion over edges; independent oracle.
int brute_max_matching(const ColouredGraph& g, Colour c,
                       const std::vector<int>& verts) {
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      if (g.has(c, verts[i], verts[j]))
        edges.emplace_back(verts[i], verts[j]);
  std::vector<char> used(g.size(), 0);
  std::function<int(size_t)> rec = [&](size_t idx) -> int {
    if (idx == edges.size()) return 0;
    int best = rec(idx + 1);
    auto [u, v] = edges[idx];
    if (!used[u] && !used[v]) {
      used[u] = used[v] = 1;
      best = std::max(best, 1 + rec(idx + 1));
      used[u] = used[v] = 0;
    }
    return best;
  };
  return rec(0);
}

// Largest matching over single components: brute force on every subset of
// edges is too slow, so enumerate matchings per component via components
// computed with a fresh union-find here.
int brute_largest_connected_matching(const ColouredGraph& g, Colour c) {
  std::vector<int> parent(g.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v, cs] : g.edges())
    if (cs.has(c)) parent[find(u)] = find(v);
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < g.size(); ++v) {
    bool incident = g.degree(c, v) > 0;
    if (incident) groups[find(v)].push_back(v);
  }
  int best = 0;
  for (auto& [root, verts] : groups)
    best = std::max(best, brute_max_matching(g, c, verts));
  return best;
}

}  // namespace

TEST_CASE("max matching on basic shapes") {
  CHECK(max_matching(mono_complete(4, Colour::Red), Colour::Red).size() == 2);

  auto c5 = from_edges(5, Colour::Red,
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK(max_matching(c5, Colour::Red).size() == 2);

  auto none = mono_complete(4, Colour::Blue);
  CHECK(max_matching(none, Colour::Red).size() == 0);
}

TEST_CASE("blossom handles odd structures") {
  // two triangles joined by a bridge need an augmenting path through
  // blossoms: vertices 0-1-2 triangle, 3-4-5 triangle, bridge 2-3
  auto g = from_edges(
      6, Colour::Red, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  CHECK(max_matching(g, Colour::Red).size() == 3);

  // Petersen graph has a perfect matching
  std::vector<std::pair<int, int>> petersen = {
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
      {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
      {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}};
  CHECK(max_matching(from_edges(10, Colour::Red, petersen), Colour::Red)
            .size() == 5);
}

TEST_CASE("max matching agrees with brute force on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    auto g = random_coloured(rng, 9, 0.45);
    for (Colour c : kColours) {
      std::vector<int> all;
      for (int v = 0; v < g.size(); ++v) all.push_back(v);
      CHECK(max_matching(g, c).size() == brute_max_matching(g, c, all));
    }
  }
}

TEST_CASE("bipartite matching with cover") {
  auto k33 = [] {
    std::vector<EdgeSpec> es;
    for (int i = 0; i < 3; ++i)
      for (int j = 3; j < 6; ++j)
        es.push_back({i, j, ColourSet::of(Colour::Red)});
    return ColouredGraph::build(6, es);
  }();
  auto a = VertexSet::range(0, 3);
  auto b = VertexSet::range(3, 6);
  CHECK(max_bipartite_matching(k33, Colour::Red, a, b).size() == 3);

  // star K_{1,4}
  auto star = from_edges(5, Colour::Red, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(max_bipartite_matching(star, Colour::Red, VertexSet::of({0}),
                               VertexSet::of({1, 2, 3, 4}))
            .size() == 1);

  // K44 minus a perfect matching still has a perfect matching
  std::vector<EdgeSpec> es;
  for (int i = 0; i < 4; ++i)
    for (int j = 4; j < 8; ++j)
      if (j - 4 != i) es.push_back({i, j, ColourSet::of(Colour::Red)});
  auto k44m = ColouredGraph::build(8, es);
  CHECK(max_bipartite_matching(k44m, Colour::Red, VertexSet::range(0, 4),
                               VertexSet::range(4, 8))
            .size() == 4);

  CHECK_THROWS_AS(
      max_bipartite_matching(k33, Colour::Red, a, VertexSet::of({0, 3})),
      PreconditionError);
}

TEST_CASE("Konig cover covers every edge with matching-many vertices") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    int na = 2 + int(rng() % 5), nb = 2 + int(rng() % 5);
    std::vector<EdgeSpec> es;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j)
        if (rng() % 3) es.push_back({i, na + j, ColourSet::of(Colour::Blue)});
    auto g = ColouredGraph::build(na + nb, es);
    auto a = VertexSet::range(0, na);
    auto b = VertexSet::range(na, na + nb);
    auto res = max_bipartite_matching_with_cover(g, Colour::Blue, a, b);
    CHECK(res.cover_a.size() + res.cover_b.size() == res.matching.size());
    for (const auto& [u, v, cs] : g.edges()) {
      bool covered = res.cover_a.contains(u) || res.cover_a.contains(v) ||
                     res.cover_b.contains(u) || res.cover_b.contains(v);
      CHECK(covered);
    }
  }
}

TEST_CASE("largest connected matching picks a single component") {
  // two disjoint red edges: only one edge per component
  auto two = from_edges(4, Colour::Red, {{0, 1}, {2, 3}});
  auto cert = largest_connected_matching(two, Colour::Red);
  CHECK(cert.matching.size() == 1);
  CHECK(verify::certificate_ok(two, cert));

  // path on 4 vertices
  auto p4 = from_edges(4, Colour::Red, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(largest_connected_matching(p4, Colour::Red).matching.size() == 2);

  // C6 beats a triangle
  auto g = from_edges(9, Colour::Red,
                      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0},
                       {6, 7}, {7, 8}, {6, 8}});
  auto best = largest_connected_matching(g, Colour::Red);
  CHECK(best.matching.size() == 3);
  CHECK(best.component.contains(0));
  CHECK(verify::certificate_ok(g, best));
}

TEST_CASE("odd connected matching restricts to non-bipartite components") {
  auto c5 = from_edges(5, Colour::Green,
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  auto cert = largest_odd_connected_matching(c5, Colour::Green);
  CHECK(cert.matching.size() == 2);
  REQUIRE(cert.odd_witness.has_value());
  CHECK(verify::certificate_ok(c5, cert));

  auto c6 = from_edges(6, Colour::Green,
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  CHECK(largest_odd_connected_matching(c6, Colour::Green).empty());

  // K4 (odd, matching 2) vs C8 (even, matching 4): odd search must take K4
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) es.emplace_back(i, j);
  for (int i = 0; i < 8; ++i) es.emplace_back(4 + i, 4 + (i + 1) % 8);
  auto g = from_edges(12, Colour::Green, es);
  auto odd = largest_odd_connected_matching(g, Colour::Green);
  CHECK(odd.matching.size() == 2);
  auto any = largest_connected_matching(g, Colour::Green);
  CHECK(any.matching.size() == 4);
  CHECK(odd.vertex_count() <= any.vertex_count());
}

TEST_CASE("certificates round-trip through json and verify") {
  std::mt19937_64 rng(5);
  auto g = random_coloured(rng, 10, 0.5);
  for (Colour c : kColours) {
    auto cert = largest_connected_matching(g, c);
    if (cert.empty()) continue;
    auto j = cert.to_json();
    auto back = ConnectedMatchingCertificate::from_json(j, g.size());
    CHECK(verify::certificate_ok(g, back));
    CHECK(back.matching.edges == cert.matching.edges);
  }
}

TEST_CASE("verifier rejects corrupted certificates") {
  auto g = from_edges(6, Colour::Red,
                      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  auto cert = largest_connected_matching(g, Colour::Red);
  REQUIRE(verify::certificate_ok(g, cert));

  auto broken = cert;
  broken.matching.edges.push_back({0, 5});  // not disjoint / maybe non-edge
  CHECK_FALSE(verify::certificate_ok(g, broken));

  auto wrong_colour = cert;
  wrong_colour.matching.colour = Colour::Blue;
  CHECK_FALSE(verify::certificate_ok(g, wrong_colour));

  auto bad_tree = cert;
  if (!bad_tree.component.empty()) {
    bad_tree.tree_parent[bad_tree.component.items().back()] = -1;
    if (bad_tree.component.items().back() != bad_tree.tree_root)
      CHECK_FALSE(verify::certificate_ok(g, bad_tree));
  }

  auto bad_witness = cert;
  bad_witness.odd_witness = std::vector<int>{0, 1, 2};
  CHECK_FALSE(verify::certificate_ok(g, bad_witness));
}

TEST_CASE("largest connected matching agrees with brute force (oracle)") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    auto g = random_coloured(rng, 9, 0.4);
    for (Colour c : kColours) {
      auto cert = largest_connected_matching(g, c);
      CHECK(cert.matching.size() == brute_largest_connected_matching(g, c));
      if (!cert.empty()) CHECK(verify::certificate_ok(g, cert));
    }
  }
}

TEST_CASE("greedy almost-complete bipartite matching") {
  // K33 complete: a = 0, l = 3
  auto k33 = [] {
    std::vector<EdgeSpec> es;
    for (int i = 0; i < 3; ++i)
      for (int j = 3; j < 6; ++j)
        es.push_back({i, j, ColourSet::of(Colour::Red)});
    return ColouredGraph::build(6, es);
  }();
  auto cert = greedy_almost_complete_matching(
      k33, Colour::Red, VertexSet::range(0, 3), VertexSet::range(3, 6), 0, 3);
  CHECK(cert.matching.size() == 3);
  CHECK(verify::certificate_ok(k33, cert));

  // K44 minus perfect matching, a=1, l=4: at least 3 edges
  std::vector<EdgeSpec> es;
  for (int i = 0; i < 4; ++i)
    for (int j = 4; j < 8; ++j)
      if (j - 4 != i) es.push_back({i, j, ColourSet::of(Colour::Red)});
  auto k44m = ColouredGraph::build(8, es);
  auto cert2 = greedy_almost_complete_matching(
      k44m, Colour::Red, VertexSet::range(0, 4), VertexSet::range(4, 8), 1, 4);
  CHECK(cert2.matching.size() >= 3);
  CHECK(verify::certificate_ok(k44m, cert2));

  // single edge
  auto e = from_edges(2, Colour::Red, {{0, 1}});
  auto cert3 = greedy_almost_complete_matching(
      e, Colour::Red, VertexSet::of({0}), VertexSet::of({1}), 0, 1);
  CHECK(cert3.matching.size() == 1);

  // precondition violations
  CHECK_THROWS_AS(
      greedy_almost_complete_matching(k33, Colour::Red, VertexSet::range(0, 3),
                                      VertexSet::range(3, 6), 2, 3),
      PreconditionError);
  CHECK_THROWS_AS(
      greedy_almost_complete_matching(k33, Colour::Blue,
                                      VertexSet::range(0, 3),
                                      VertexSet::range(3, 6), 0, 3),
      PreconditionError);
}

TEST_CASE("greedy bound holds on random almost-complete instances") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    int nb = 2 + int(rng() % 12);
    int na = nb + int(rng() % 6);
    int l = nb;
    int a = l >= 2 ? int(rng() % ((l + 1) / 2)) : 0;  // a/l < 1/2
    // start complete, delete cross edges while both endpoints stay within a
    std::vector<std::vector<char>> present(na, std::vector<char>(nb, 1));
    std::vector<int> missing_a(na, 0), missing_b(nb, 0);
    int attempts = na * nb;
    while (attempts-- > 0) {
      int i = int(rng() % na), j = int(rng() % nb);
      if (present[i][j] && missing_a[i] < a && missing_b[j] < a) {
        present[i][j] = 0;
        ++missing_a[i];
        ++missing_b[j];
      }
    }
    std::vector<EdgeSpec> es;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j)
        if (present[i][j])
          es.push_back({i, na + j, ColourSet::of(Colour::Blue)});
    auto g = ColouredGraph::build(na + nb, es);
    auto cert = greedy_almost_complete_matching(
        g, Colour::Blue, VertexSet::range(0, na),
        VertexSet::range(na, na + nb), a, l);
    CHECK(cert.matching.size() >= nb - a);
    CHECK(verify::certificate_ok(g, cert));
  }
}

TEST_CASE("effective components let a matching span colour components") {
  // red edges 0-1 and 2-3; blue edge 1-2 connects them in the ambient graph
  auto g = ColouredGraph::build(4, {{0, 1, ColourSet::of(Colour::Red)},
                                    {2, 3, ColourSet::of(Colour::Red)},
                                    {1, 2, ColourSet::of(Colour::Blue)}});
  auto strict = largest_connected_matching(g, Colour::Red);
  CHECK(strict.matching.size() == 1);
  auto effective = largest_connected_matching(
      g, Colour::Red, ConnectivityMode::EffectiveComponent);
  CHECK(effective.matching.size() == 2);
  CHECK(verify::certificate_ok(g, effective));
}
