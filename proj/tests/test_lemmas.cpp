#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ramsey/lemmas.hpp"

using namespace ramsey;

namespace {

ColouredGraph mono_complete(int n, Colour c) {
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j, ColourSet::of(c)});
  return ColouredGraph::build(n, es);
}

// (1-eta)-complete random two-colouring: delete up to `misses` incident
// pairs per vertex from the complete graph, colour the rest.
ColouredGraph random_two_coloured(std::mt19937_64& rng, int n, int misses,
                                  double p_red, double p_both = 0.0) {
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 1));
  std::vector<int> missing(n, 0);
  int attempts = n * misses;
  while (attempts-- > 0) {
    int i = int(rng() % n), j = int(rng() % n);
    if (i == j || !present[i][j]) continue;
    if (missing[i] < misses && missing[j] < misses) {
      present[i][j] = present[j][i] = 0;
      ++missing[i];
      ++missing[j];
    }
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!present[i][j]) continue;
      if (p_both > 0 && unit(rng) < p_both)
        es.push_back({i, j, ColourSet::of({Colour::Red, Colour::Blue})});
      else
        es.push_back({i, j, ColourSet::of(unit(rng) < p_red ? Colour::Red
                                                            : Colour::Blue)});
    }
  return ColouredGraph::build(n, es);
}

}  // namespace

TEST_CASE("connected matching from average degree") {
  auto k5 = mono_complete(5, Colour::Red);
  auto cert = connected_matching_from_degree(k5, Colour::Red, 4);
  CHECK(cert.vertex_count() >= 4);
  CHECK(verify::certificate_ok(k5, cert));

  auto k4 = mono_complete(4, Colour::Red);
  auto cert2 = connected_matching_from_degree(k4, Colour::Red, 3);
  CHECK(cert2.vertex_count() >= 4);  // matching vertex counts are even

  CHECK_THROWS_AS(
      connected_matching_from_degree(mono_complete(5, Colour::Blue),
                                     Colour::Red, 3),
      PreconditionError);
}

TEST_CASE("average degree lemma on random graphs (oracle check)") {
  std::mt19937_64 rng(3);
  int used = 0;
  for (int trial = 0; trial < 200 && used < 50; ++trial) {
    auto g = random_two_coloured(rng, 9, 2, 0.7);
    long e2 = 2L * g.edge_count(Colour::Red);
    int m = int(e2 / g.size());
    if (m < 3) continue;
    ++used;
    auto cert = connected_matching_from_degree(g, Colour::Red, m);
    CHECK(cert.vertex_count() >= m);
    CHECK(verify::certificate_ok(g, cert));
  }
  CHECK(used >= 30);
}

TEST_CASE("largest component of two-coloured almost-complete graphs") {
  auto all_red = mono_complete(10, Colour::Red);
  auto out = largest_component_two_coloured(all_red, rat(1, 10));
  CHECK(out.tag == "i");
  CHECK(out.verified);
  CHECK(out.parts.front().second.size() == 10);

  // red clique on half, blue everywhere else: blue component is large
  std::vector<EdgeSpec> es;
  for (int i = 0; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j) {
      bool red = i < 10 && j < 10;
      es.push_back({i, j, ColourSet::of(red ? Colour::Red : Colour::Blue)});
    }
  auto half = ColouredGraph::build(20, es);
  auto out2 = largest_component_two_coloured(half, rat(1, 20));
  CHECK(out2.tag == "i");
  CHECK(out2.parts.front().second.size() >= 19);

  CHECK_THROWS_AS(largest_component_two_coloured(all_red, rat(1, 2)),
                  PreconditionError);
  CHECK_THROWS_AS(
      largest_component_two_coloured(mono_complete(10, Colour::Green),
                                     rat(1, 10)),
      PreconditionError);
}

TEST_CASE("largest-component bound holds on random instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 40;
    auto g = random_two_coloured(rng, n, 2, 0.5, 0.1);  // eta = 2/(n-1) < 1/3
    auto out = largest_component_two_coloured(g, rat(2, n - 1));
    CHECK(out.tag == "i");
    CHECK(out.verified);
  }
}

TEST_CASE("one-hole analysis returns a verified outcome") {
  // K = 100, |W| = 40, eta = 1/100: the smallest scale satisfying
  // |W|, |V\W| >= 4 sqrt(eta) K = 40 with K >= 1/eta.
  int n = 100, wsize = 40;
  std::vector<EdgeSpec> es;
  auto w = VertexSet::range(0, wsize);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i < wsize && j < wsize) continue;  // hole
      es.push_back({i, j, ColourSet::of(Colour::Red)});
    }
  auto g = ColouredGraph::build(n, es);
  auto out = one_hole_analysis(g, w, rat(1, 100));
  CHECK(out.tag == "i");
  CHECK(out.verified);
}

TEST_CASE("one-hole star sets computed by degree count") {
  // w0..w19 red-complete to the outside, w20..w39 blue-complete; outside
  // two-coloured in halves.  Membership in W_r / W_b follows from the
  // degree counts regardless of which lemma outcome fires.
  int n = 100, wsize = 40;
  std::vector<EdgeSpec> es;
  for (int i = wsize; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool left = i < 70 && j < 70;
      es.push_back({i, j, ColourSet::of(left ? Colour::Red : Colour::Blue)});
    }
  for (int wv = 0; wv < wsize; ++wv)
    for (int o = wsize; o < n; ++o)
      es.push_back({wv, o,
                    ColourSet::of(wv < 20 ? Colour::Red : Colour::Blue)});
  auto g = ColouredGraph::build(n, es);
  auto out = one_hole_analysis(g, VertexSet::range(0, wsize), rat(1, 100));
  CHECK(out.verified);
  auto find_part = [&](const char* nm) {
    for (const auto& [pname, vs] : out.parts)
      if (pname == nm) return vs;
    return VertexSet();
  };
  auto wr = find_part("W_r");
  auto wb = find_part("W_b");
  for (int v = 0; v < 20; ++v) CHECK(wr.contains(v));
  for (int v = 20; v < 40; ++v) CHECK(wb.contains(v));
  for (int v = 0; v < 20; ++v) CHECK_FALSE(wb.contains(v));
}

TEST_CASE("two-hole analysis covers its case ladder") {
  // (i): all cross edges red; K = 48 >= 2/eta with eta = 1/20
  int na = 24, nb = 24, n = na + nb;
  std::vector<EdgeSpec> es;
  for (int i = 0; i < na; ++i)
    for (int j = na; j < n; ++j)
      es.push_back({i, j, ColourSet::of(Colour::Red)});
  auto g = ColouredGraph::build(n, es);
  auto out = two_holes_analysis(g, VertexSet::range(0, na),
                                VertexSet::range(na, n), rat(1, 20));
  CHECK(out.tag == "i");
  CHECK(out.verified);

  // (ii): exact cross pattern red i=j / blue otherwise
  int h = 12;
  std::vector<EdgeSpec> es2;
  int total = 4 * h;
  auto block = [&](int v) { return v / h; };  // 0=A1,1=A2,2=B1,3=B2
  for (int u = 0; u < total; ++u)
    for (int v = u + 1; v < total; ++v) {
      int bu = block(u), bv = block(v);
      if (bu > bv) std::swap(bu, bv);
      if (bu <= 1 && bv >= 2) {
        bool same = (bu == 0 && bv == 2) || (bu == 1 && bv == 3);
        es2.push_back({u, v, ColourSet::of(same ? Colour::Red
                                                : Colour::Blue)});
      }
    }
  auto g2 = ColouredGraph::build(total, es2);
  auto out2 = two_holes_analysis(g2, VertexSet::range(0, 2 * h),
                                 VertexSet::range(2 * h, total),
                                 rat(1, 20));
  CHECK(out2.tag == "ii");
  CHECK(out2.verified);

  // the returned parts reproduce the cross pattern exactly
  auto find_part = [&](const char* nm) {
    for (const auto& [pname, vs] : out2.parts)
      if (pname == nm) return vs;
    return VertexSet();
  };
  auto a1 = find_part("A1");
  auto b1 = find_part("B1");
  REQUIRE(!a1.empty());
  REQUIRE(!b1.empty());
  for (int u : a1)
    for (int v : b1)
      if (g2.has_edge(u, v)) CHECK(g2.colours(u, v).only(Colour::Red));
}

TEST_CASE("two-hole analysis is total on random valid instances") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    int k = 60;
    Rational eta(1, 15);
    int na = 24 + int(rng() % 12);
    // cut the two holes out of an (1-eta)-complete random two-colouring
    auto base = random_two_coloured(rng, k, 3, 0.5, 0.05);
    std::vector<EdgeSpec> es;
    for (const auto& [u, v, cs] : base.edges()) {
      bool in_a = u < na && v < na;
      bool in_b = u >= na && v >= na;
      if (in_a || in_b) continue;
      es.push_back({u, v, cs});
    }
    auto g = ColouredGraph::build(k, es);
    auto out = two_holes_analysis(g, VertexSet::range(0, na),
                                  VertexSet::range(na, k), eta);
    CHECK(out.tag != "counterexample");
    CHECK(out.verified);
  }
}

TEST_CASE("dense bipartite matching meets the 2(1-3eps)|B| bound") {
  // complete bipartite 50x30
  std::vector<EdgeSpec> es;
  for (int i = 0; i < 50; ++i)
    for (int j = 50; j < 80; ++j)
      es.push_back({i, j, ColourSet::of(Colour::Red)});
  auto g = ColouredGraph::build(80, es);
  auto cert = dense_bipartite_matching(g, Colour::Red, VertexSet::range(0, 50),
                                       VertexSet::range(50, 80), rat(1, 200));
  CHECK(cert.vertex_count() >= 60);
  CHECK(verify::certificate_ok(g, cert));

  CHECK_THROWS_AS(
      dense_bipartite_matching(g, Colour::Blue, VertexSet::range(0, 50),
                               VertexSet::range(50, 80), rat(1, 200)),
      PreconditionError);
}

TEST_CASE("structure detector finds matchings and partitions") {
  long k = 30;
  Rational eta(1, 1000);
  SkbOptions opt;
  opt.precondition_slack = rat(100);  // desk scale: beta >= 100 sqrt(eta) a

  // red clique bigger than (1+sqrt(eta)) alpha k = ~ (1.03) * 0.5 * 30
  auto clique = mono_complete(40, Colour::Red);
  auto out = red_blue_structure_detector(clique, rat(1, 2), rat(1, 2), eta, k,
                                         opt);
  CHECK((out.tag == "i" || out.tag == "i_odd"));
  CHECK(out.verified);

  // structured instance: V' red clique (51), blue join to V'' (25), sized so
  // both matching outcomes fall just below their (1+sqrt(eta)) bounds
  std::vector<EdgeSpec> es;
  int np = 51, npp = 25;
  for (int i = 0; i < np + npp; ++i)
    for (int j = i + 1; j < np + npp; ++j) {
      bool inside = i < np && j < np;
      es.push_back({i, j, ColourSet::of(inside ? Colour::Red : Colour::Blue)});
    }
  auto g = ColouredGraph::build(np + npp, es);
  auto out2 = red_blue_structure_detector(g, rat(5, 8), rat(5, 8), eta, 80,
                                          opt);
  CHECK(out2.tag == "iii");
  CHECK(out2.verified);
}

TEST_CASE("detector output always passes its verifier on random graphs") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_two_coloured(rng, 30, 1, 0.5);
    LemmaOutcome out;
    SkbOptions opt;
    opt.precondition_slack = rat(100);
    try {
      out = red_blue_structure_detector(g, rat(1, 2), rat(2, 5), rat(1, 1000),
                                        30, opt);
    } catch (const PreconditionError&) {
      continue;
    }
    if (out.tag == "inconclusive") continue;
    CHECK(out.verified);
  }
}

TEST_CASE("balanced two-colour matching lemma") {
  auto red = mono_complete(30, Colour::Red);
  auto out = balanced_two_colour_matching(red, rat(1, 100), 30);
  CHECK(out.tag == "i");
  CHECK(out.verified);
  CHECK(out.certificate->vertex_count() >= 20);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_two_coloured(rng, 50, 0, 0.5);
    auto o = balanced_two_colour_matching(g, rat(1, 100), 50);
    CHECK((o.tag == "i" || o.tag == "ii"));
    CHECK(o.verified);
  }

  CHECK_THROWS_AS(balanced_two_colour_matching(red, rat(2), 30),
                  PreconditionError);
}

TEST_CASE("three-colour matching check") {
  auto red = mono_complete(40, Colour::Red);
  auto out = three_colour_matching_check(red, rat(1, 2), rat(1, 2), rat(1, 2),
                                         rat(1, 10000), 30);
  CHECK(out.tag == "red");
  CHECK(out.verified);

  CHECK_THROWS_AS(three_colour_matching_check(mono_complete(5, Colour::Red),
                                              rat(1, 2), rat(1, 2), rat(1, 2),
                                              rat(1, 10000), 1000),
                  PreconditionError);
}

TEST_CASE("hole-tolerant matching lemma") {
  // all non-hole edges red
  int n = 40;
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i < 5 && j < 5) continue;
      es.push_back({i, j, ColourSet::of(Colour::Red)});
    }
  auto g = ColouredGraph::build(n, es);
  auto out = hole_tolerant_matching(g, VertexSet::range(0, 5), rat(1, 2),
                                    rat(1, 2), rat(1, 4), rat(1, 250), 36);
  CHECK(out.tag == "red");
  CHECK(out.verified);

  // |W| > vk refused
  CHECK_THROWS_AS(
      hole_tolerant_matching(g, VertexSet::range(0, 5), rat(1, 2), rat(1, 2),
                             rat(1, 100), rat(1, 250), 36),
      PreconditionError);
}

TEST_CASE("lemma outcome json carries slack and parts") {
  auto red = mono_complete(10, Colour::Red);
  auto out = largest_component_two_coloured(red, rat(1, 10));
  auto j = out.to_json();
  CHECK(j["lemma"] == "dgf0");
  CHECK(j["verified"] == true);
  CHECK(j["slack"].size() >= 1);
}
