#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

struct Matching {
  Colour colour = Colour::Red;
  std::vector<std::pair<int, int>> edges;  // each pair sorted, list sorted

  int size() const { return static_cast<int>(edges.size()); }
  int vertex_count() const { return 2 * size(); }
  VertexSet vertices() const;
  void normalize();
};

// Connectivity of a connected-matching is witnessed either inside the colour
// subgraph itself or, for effective-components, through the ambient graph.
enum class ConnectivityMode { ColourComponent, EffectiveComponent };

struct ConnectedMatchingCertificate {
  Matching matching;
  VertexSet component;
  // Parent pointers of a spanning tree of `component`; indexed by vertex,
  // -1 for the root and for vertices outside the component.
  std::vector<int> tree_parent;
  int tree_root = -1;
  std::optional<std::vector<int>> odd_witness;  // odd closed cycle
  ConnectivityMode mode = ConnectivityMode::ColourComponent;

  bool empty() const { return matching.edges.empty(); }
  int vertex_count() const { return matching.vertex_count(); }

  Json to_json() const;
  static ConnectedMatchingCertificate from_json(const Json& j, int n);
};

// Exact maximum matching of the colour subgraph (blossom algorithm),
// optionally restricted to `within`.
Matching max_matching(const ColouredGraph& g, Colour colour,
                      const VertexSet* within = nullptr);

Matching max_bipartite_matching(const ColouredGraph& g, Colour colour,
                                const VertexSet& a, const VertexSet& b);

struct BipartiteMatchingWithCover {
  Matching matching;
  VertexSet cover_a;  // minimum vertex cover split by side (Konig)
  VertexSet cover_b;
};
BipartiteMatchingWithCover max_bipartite_matching_with_cover(
    const ColouredGraph& g, Colour colour, const VertexSet& a,
    const VertexSet& b);

ConnectedMatchingCertificate largest_connected_matching(
    const ColouredGraph& g, Colour colour,
    ConnectivityMode mode = ConnectivityMode::ColourComponent,
    const Bits* within = nullptr);

ConnectedMatchingCertificate largest_odd_connected_matching(
    const ColouredGraph& g, Colour colour, const Bits* within = nullptr);

// Greedy extension matching for a-almost-complete bipartite colour graphs:
// while some B-vertex is unmatched it still has an unmatched A-neighbour, so
// the result has at least |B| - a edges.  Requires |A| >= |B| >= l and
// a/l < 1/2, which also makes the cross graph connected.
ConnectedMatchingCertificate greedy_almost_complete_matching(
    const ColouredGraph& g, Colour colour, const VertexSet& a,
    const VertexSet& b, int almost, int l);

// Builds the certificate wrapper (component, spanning tree, odd witness)
// around a matching already known to live inside one component.
ConnectedMatchingCertificate certify_matching(const ColouredGraph& g,
                                              const Matching& m,
                                              ConnectivityMode mode,
                                              const Bits* within = nullptr);

namespace verify {

// Definition-level certificate check; shares no search code with producers.
std::vector<std::string> certificate_violations(
    const ColouredGraph& g, const ConnectedMatchingCertificate& cert);
bool certificate_ok(const ColouredGraph& g,
                    const ConnectedMatchingCertificate& cert);

}  // namespace verify

}  // namespace ramsey
