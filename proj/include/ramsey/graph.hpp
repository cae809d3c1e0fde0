#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ramsey/bitset.hpp"
#include "ramsey/colour.hpp"
#include "ramsey/rational.hpp"

#include <json.hpp>

namespace ramsey {

using Json = nlohmann::json;

// Sorted duplicate-free list of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  static VertexSet of(std::vector<int> v);
  static VertexSet from_mask(const Bits& mask);
  static VertexSet range(int lo, int hi);  // [lo, hi)

  int size() const { return static_cast<int>(v_.size()); }
  bool empty() const { return v_.empty(); }
  bool contains(int x) const;
  int min() const { return v_.empty() ? -1 : v_.front(); }
  const std::vector<int>& items() const { return v_; }
  Bits mask(int n) const;

  VertexSet unite(const VertexSet& o) const;
  VertexSet minus(const VertexSet& o) const;
  bool disjoint_from(const VertexSet& o) const;

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.v_ == b.v_;
  }
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    return a.v_ < b.v_;
  }

 private:
  std::vector<int> v_;
};

struct EdgeSpec {
  int u;
  int v;
  ColourSet colours;
};

// Three-multicoloured graph on dense integer vertices; immutable once built.
// Absent pairs model holes.
class ColouredGraph {
 public:
  static ColouredGraph build(int n, const std::vector<EdgeSpec>& assignments);

  int size() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int edge_count(Colour c) const { return edge_count_[index(c)]; }

  bool has_edge(int u, int v) const { return present_[u].test(v); }
  bool has(Colour c, int u, int v) const { return adj_[index(c)][u].test(v); }
  ColourSet colours(int u, int v) const;

  const Bits& neighbours(Colour c, int u) const { return adj_[index(c)][u]; }
  const Bits& neighbours_any(int u) const { return present_[u]; }
  int degree(Colour c, int u) const { return adj_[index(c)][u].count(); }
  int degree_any(int u) const { return present_[u].count(); }

  // Canonical edge list, sorted lexicographically by (u, v).
  const std::vector<std::tuple<int, int, ColourSet>>& edges() const {
    return edges_;
  }

  Json to_json() const;
  static ColouredGraph from_json(const Json& j);

 private:
  int n_ = 0;
  std::array<std::vector<Bits>, 3> adj_;
  std::vector<Bits> present_;
  std::array<int, 3> edge_count_ = {0, 0, 0};
  std::vector<std::tuple<int, int, ColourSet>> edges_;
};

struct Induced {
  ColouredGraph graph;
  std::vector<int> to_parent;  // local index -> original vertex
};
Induced induced_subgraph(const ColouredGraph& g, const VertexSet& vs);

struct CompletenessReport {
  int min_degree = 0;
  int a_almost = 0;        // smallest a with delta >= (N-1)-a
  Rational fraction = 0;   // largest c' with delta >= c'(N-1)
};

// Degrees count edges of any colour unless a colour filter is given.
CompletenessReport completeness_report(const ColouredGraph& g,
                                       std::optional<Colour> colour = {});
CompletenessReport completeness_report_within(const ColouredGraph& g,
                                              const VertexSet& scope,
                                              std::optional<Colour> colour = {});

struct BipartiteCompletenessReport {
  int min_cross_degree = 0;
  int a_almost = 0;             // both sides: degree >= |other| - a
  Rational complete_fraction = 0;  // largest c' with all degrees >= c'|other|
  Rational sparse_fraction = 0;    // smallest c with all degrees <= c|other|
};

BipartiteCompletenessReport bipartite_completeness(
    const ColouredGraph& g, const VertexSet& a, const VertexSet& b,
    std::optional<Colour> colour = {});

struct ComponentInfo {
  VertexSet vertices;
  bool odd = false;  // component contains an odd cycle (non-bipartite)
  std::optional<std::vector<int>> odd_cycle;  // explicit witness when odd
};

struct ComponentList {
  std::vector<ComponentInfo> components;  // ordered by minimum vertex
  VertexSet isolated;                     // colour-isolated vertices in scope
};

ComponentList mono_components(const ColouredGraph& g, Colour colour,
                              const Bits* within = nullptr);

// Components of the union graph (any colour); used for effective-component
// semantics where connectivity may route through the ambient graph.
ComponentList ambient_components(const ColouredGraph& g,
                                 const Bits* within = nullptr);

// Asymptotic formula values from the cycle Ramsey theorems.  These are
// conjectured asymptotic values; for small parameters they need not equal
// true Ramsey numbers, so callers must not label them as such.
long ramsey_formula_A(long n, long m, long l);
long ramsey_formula_C(long n, long m, long l);
Rational threshold_c(const Rational& a1, const Rational& a2,
                     const Rational& a3);

Json vertex_set_to_json(const VertexSet& vs);
VertexSet vertex_set_from_json(const Json& j);

}  // namespace ramsey
