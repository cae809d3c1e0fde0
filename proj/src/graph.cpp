#include "ramsey/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ramsey {

VertexSet VertexSet::of(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  VertexSet s;
  s.v_ = std::move(v);
  return s;
}

VertexSet VertexSet::from_mask(const Bits& mask) {
  VertexSet s;
  mask.for_each([&](int i) { s.v_.push_back(i); });
  return s;
}

VertexSet VertexSet::range(int lo, int hi) {
  VertexSet s;
  for (int i = lo; i < hi; ++i) s.v_.push_back(i);
  return s;
}

bool VertexSet::contains(int x) const {
  return std::binary_search(v_.begin(), v_.end(), x);
}

Bits VertexSet::mask(int n) const {
  Bits b(n);
  for (int x : v_) b.set(x);
  return b;
}

VertexSet VertexSet::unite(const VertexSet& o) const {
  std::vector<int> out;
  std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                 std::back_inserter(out));
  VertexSet s;
  s.v_ = std::move(out);
  return s;
}

VertexSet VertexSet::minus(const VertexSet& o) const {
  std::vector<int> out;
  std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                      std::back_inserter(out));
  VertexSet s;
  s.v_ = std::move(out);
  return s;
}

bool VertexSet::disjoint_from(const VertexSet& o) const {
  auto i = v_.begin();
  auto j = o.v_.begin();
  while (i != v_.end() && j != o.v_.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

ColouredGraph ColouredGraph::build(int n,
                                   const std::vector<EdgeSpec>& assignments) {
  if (n < 0) throw PreconditionError("negative vertex count");
  ColouredGraph g;
  g.n_ = n;
  for (auto& rows : g.adj_) rows.assign(n, Bits(n));
  g.present_.assign(n, Bits(n));

  std::set<std::pair<int, int>> seen;
  std::vector<std::tuple<int, int, ColourSet>> edges;
  edges.reserve(assignments.size());
  for (const auto& e : assignments) {
    int u = std::min(e.u, e.v);
    int v = std::max(e.u, e.v);
    std::ostringstream at;
    at << " at pair (" << e.u << "," << e.v << ")";
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw PreconditionError("vertex out of range" + at.str());
    if (e.u == e.v) throw PreconditionError("self-loop" + at.str());
    if (e.colours.empty())
      throw PreconditionError("empty colour set" + at.str());
    if (!seen.insert({u, v}).second)
      throw PreconditionError("duplicate pair" + at.str());
    edges.emplace_back(u, v, e.colours);
    e.colours.for_each([&](Colour c) {
      g.adj_[index(c)][u].set(v);
      g.adj_[index(c)][v].set(u);
      ++g.edge_count_[index(c)];
    });
    g.present_[u].set(v);
    g.present_[v].set(u);
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::make_pair(std::get<0>(a), std::get<1>(a)) <
           std::make_pair(std::get<0>(b), std::get<1>(b));
  });
  g.edges_ = std::move(edges);
  return g;
}

ColourSet ColouredGraph::colours(int u, int v) const {
  ColourSet s;
  for (Colour c : kColours)
    if (adj_[index(c)][u].test(v)) s.add(c);
  return s;
}

Json ColouredGraph::to_json() const {
  Json out;
  out["n"] = n_;
  Json es = Json::array();
  for (const auto& [u, v, cs] : edges_) {
    Json names = Json::array();
    cs.for_each([&](Colour c) { names.push_back(name(c)); });
    es.push_back(Json::array({u, v, names}));
  }
  out["edges"] = std::move(es);
  return out;
}

ColouredGraph ColouredGraph::from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("edges"))
    throw Error("graph json needs fields n, edges");
  int n = j.at("n").get<int>();
  std::vector<EdgeSpec> specs;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw Error("graph edge must be [u, v, [colours]]");
    ColourSet cs;
    for (const auto& cn : e.at(2)) {
      auto c = colour_from_name(cn.get<std::string>());
      if (!c) throw Error("unknown colour name: " + cn.get<std::string>());
      cs.add(*c);
    }
    specs.push_back({e.at(0).get<int>(), e.at(1).get<int>(), cs});
  }
  return build(n, specs);
}

Induced induced_subgraph(const ColouredGraph& g, const VertexSet& vs) {
  std::vector<int> to_parent(vs.begin(), vs.end());
  std::vector<int> to_local(g.size(), -1);
  for (size_t i = 0; i < to_parent.size(); ++i) to_local[to_parent[i]] = int(i);
  std::vector<EdgeSpec> specs;
  for (const auto& [u, v, cs] : g.edges()) {
    if (to_local[u] >= 0 && to_local[v] >= 0)
      specs.push_back({to_local[u], to_local[v], cs});
  }
  return {ColouredGraph::build(int(to_parent.size()), specs),
          std::move(to_parent)};
}

CompletenessReport completeness_report(const ColouredGraph& g,
                                       std::optional<Colour> colour) {
  return completeness_report_within(g, VertexSet::range(0, g.size()), colour);
}

CompletenessReport completeness_report_within(const ColouredGraph& g,
                                              const VertexSet& scope,
                                              std::optional<Colour> colour) {
  int n = scope.size();
  if (n < 1)
    throw PreconditionError("completeness report undefined on empty graph");
  Bits mask = scope.mask(g.size());
  int min_deg = n;  // upper bound; n-1 attainable
  for (int u : scope) {
    int d = colour ? g.neighbours(*colour, u).count_and(mask)
                   : g.neighbours_any(u).count_and(mask);
    min_deg = std::min(min_deg, d);
  }
  CompletenessReport r;
  r.min_degree = min_deg;
  r.a_almost = (n - 1) - min_deg;
  r.fraction = (n == 1) ? Rational(1) : rat(min_deg, n - 1);
  return r;
}

BipartiteCompletenessReport bipartite_completeness(
    const ColouredGraph& g, const VertexSet& a, const VertexSet& b,
    std::optional<Colour> colour) {
  if (a.empty() || b.empty())
    throw PreconditionError("bipartite completeness needs nonempty sides");
  if (!a.disjoint_from(b))
    throw PreconditionError("bipartite completeness needs disjoint sides");
  Bits ma = a.mask(g.size());
  Bits mb = b.mask(g.size());
  BipartiteCompletenessReport r;
  int worst_missing = 0;
  int min_deg = std::max(a.size(), b.size());
  Rational lo(1), hi(0);
  bool first = true;
  auto scan = [&](const VertexSet& side, const Bits& other_mask, int other_n) {
    for (int u : side) {
      int d = colour ? g.neighbours(*colour, u).count_and(other_mask)
                     : g.neighbours_any(u).count_and(other_mask);
      worst_missing = std::max(worst_missing, other_n - d);
      min_deg = std::min(min_deg, d);
      Rational frac = rat(d, other_n);
      if (first) {
        lo = hi = frac;
        first = false;
      } else {
        lo = std::min(lo, frac);
        hi = std::max(hi, frac);
      }
    }
  };
  scan(a, mb, b.size());
  scan(b, ma, a.size());
  r.min_cross_degree = min_deg;
  r.a_almost = worst_missing;
  r.complete_fraction = lo;
  r.sparse_fraction = hi;
  return r;
}

namespace {

// BFS over one adjacency selector, producing components with bipartition
// parity and an explicit odd closed cycle when non-bipartite.
template <class NeighbourFn>
ComponentList components_impl(int n, const Bits* within, NeighbourFn nbrs) {
  Bits scope = within ? *within : Bits::full(n);
  ComponentList out;
  std::vector<int> side(n, -1);    // 0/1 bipartition class within component
  std::vector<int> parent(n, -1);
  std::vector<int> depth(n, 0);
  std::vector<char> visited(n, 0);

  auto cycle_through = [&](int u, int v) {
    // u, v in the same BFS class joined by an edge: walk both to their
    // lowest common ancestor; the two paths plus edge uv form an odd cycle.
    std::vector<int> pu{u}, pv{v};
    int a = u, b = v;
    while (depth[a] > depth[b]) pu.push_back(a = parent[a]);
    while (depth[b] > depth[a]) pv.push_back(b = parent[b]);
    while (a != b) {
      pu.push_back(a = parent[a]);
      pv.push_back(b = parent[b]);
    }
    // pu = [u .. lca], pv = [v .. lca]; drop lca from pv and reverse it so
    // the result reads u .. lca .. v, closed by the edge vu.
    std::vector<int> full(pu.begin(), pu.end());
    for (auto it = std::next(pv.rbegin()); it != pv.rend(); ++it)
      full.push_back(*it);
    return full;
  };

  for (int s = scope.first(); s >= 0; s = scope.next(s)) {
    if (visited[s]) continue;
    Bits row = nbrs(s);
    row &= scope;
    if (row.none()) {
      visited[s] = 1;
      continue;  // isolated in this subgraph
    }
    std::vector<int> queue{s};
    visited[s] = 1;
    side[s] = 0;
    parent[s] = -1;
    depth[s] = 0;
    std::vector<int> members;
    bool odd = false;
    std::optional<std::vector<int>> witness;
    size_t qi = 0;
    while (qi < queue.size()) {
      int u = queue[qi++];
      members.push_back(u);
      Bits nb = nbrs(u);
      nb &= scope;
      for (int v = nb.first(); v >= 0; v = nb.next(v)) {
        if (!visited[v]) {
          visited[v] = 1;
          side[v] = 1 - side[u];
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (!odd && side[v] == side[u] && v != u) {
          odd = true;
          witness = cycle_through(u, v);
        }
      }
    }
    ComponentInfo info;
    info.vertices = VertexSet::of(std::move(members));
    info.odd = odd;
    info.odd_cycle = witness;
    out.components.push_back(std::move(info));
  }
  std::vector<int> isolated;
  for (int s = scope.first(); s >= 0; s = scope.next(s)) {
    Bits row = nbrs(s);
    row &= scope;
    if (row.none()) isolated.push_back(s);
  }
  out.isolated = VertexSet::of(std::move(isolated));
  std::sort(out.components.begin(), out.components.end(),
            [](const ComponentInfo& a, const ComponentInfo& b) {
              return a.vertices.min() < b.vertices.min();
            });
  return out;
}

}  // namespace

ComponentList mono_components(const ColouredGraph& g, Colour colour,
                              const Bits* within) {
  return components_impl(g.size(), within,
                         [&](int u) { return g.neighbours(colour, u); });
}

ComponentList ambient_components(const ColouredGraph& g, const Bits* within) {
  return components_impl(g.size(), within,
                         [&](int u) { return g.neighbours_any(u); });
}

long ramsey_formula_A(long n, long m, long l) {
  if (n % 2 != 0 || n < 4) throw PreconditionError("n must be even and >= 4");
  if (m % 2 != 0 || m < 4) throw PreconditionError("m must be even and >= 4");
  if (n < m) throw PreconditionError("requires n >= m");
  if (l % 2 == 0 || l < 3) throw PreconditionError("l must be odd and >= 3");
  return std::max(2 * n + m - 3, n / 2 + m / 2 + l - 2);
}

long ramsey_formula_C(long n, long m, long l) {
  if (n % 2 != 0 || n < 4) throw PreconditionError("n must be even and >= 4");
  if (m % 2 == 0 || m < 3) throw PreconditionError("m must be odd and >= 3");
  if (l % 2 == 0 || l < 3) throw PreconditionError("l must be odd and >= 3");
  return std::max({4 * n, n + 2 * m, n + 2 * l}) - 3;
}

Rational threshold_c(const Rational& a1, const Rational& a2,
                     const Rational& a3) {
  if (!(a1 >= a2 && a2 > 0))
    throw PreconditionError("requires alpha1 >= alpha2 > 0");
  if (!(a3 > 0)) throw PreconditionError("requires alpha3 > 0");
  Rational first = 2 * a1 + a2;
  Rational second = a1 / 2 + a2 / 2 + a3;
  return std::max(first, second);
}

Json vertex_set_to_json(const VertexSet& vs) {
  Json arr = Json::array();
  for (int v : vs) arr.push_back(v);
  return arr;
}

VertexSet vertex_set_from_json(const Json& j) {
  std::vector<int> v;
  for (const auto& x : j) v.push_back(x.get<int>());
  return VertexSet::of(std::move(v));
}

}  // namespace ramsey
