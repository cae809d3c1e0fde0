#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ramsey/matching.hpp"

namespace ramsey {

// Split of the green graph into its bipartite part V' and a union of odd
// components V''; no green edges cross the split and the odd part is sparse
// whenever no odd component holds a matching on m vertices.
struct ParityDecomposition {
  VertexSet bipartite_part;  // V'
  VertexSet odd_part;        // V''
  std::vector<std::pair<VertexSet, VertexSet>> bipartitions;  // per component
  int odd_part_green_edges = 0;
  Json to_json() const;
};

// Thrown when some odd green component already carries a matching on >= m
// vertices; the offending certificate is the error payload.
struct OddMatchingFound : Error {
  explicit OddMatchingFound(ConnectedMatchingCertificate c)
      : Error("an odd green component has a matching above the bound"),
        certificate(std::move(c)) {}
  ConnectedMatchingCertificate certificate;
};

ParityDecomposition green_parity_decomposition(const ColouredGraph& g, int m);

// X u Y carries the bipartite green components (X, Y a valid bipartition
// with |X| >= |Y|), W the odd ones; green-isolated vertices balance the
// X/Y sides.
struct XYWDecomposition {
  VertexSet X, Y, W;
  Json to_json() const;
};

XYWDecomposition green_xyw(const ColouredGraph& g);

// Decomposition around a maximum odd green connected-matching F:
// M u N = V(F) with every F-edge crossing, P = outside vertices keeping a
// green edge to M, Q = the rest.  Green edges dropped to arrange this are
// recorded; the invariants hold on the residual graph.
struct OddCoreDecomposition {
  VertexSet M, N, P, Q;
  ConnectedMatchingCertificate F;
  std::vector<std::pair<int, int>> discarded_green_edges;
  bool green_ignored(int u, int v) const;
  Json to_json() const;
};

struct MatchingNotMaximal : Error {
  MatchingNotMaximal(std::pair<int, int> e1, std::pair<int, int> e2)
      : Error("matching admits an augmentation"), extend1(e1), extend2(e2) {}
  // Replacing one matching edge by these two (or adding extend1 when
  // extend2 is {-1,-1}) enlarges the matching.
  std::pair<int, int> extend1;
  std::pair<int, int> extend2;
};

OddCoreDecomposition odd_core_decomposition(
    const ColouredGraph& g, const ConnectedMatchingCertificate& f);

// Removes every cross edge between A and B carrying a colour other than
// `keep`, by discarding a vertex cover of the offending subgraph, unless a
// single wrong-colour connected-matching exceeds the threshold.
struct PurificationResult {
  bool purified = false;
  VertexSet discarded_a;
  VertexSet discarded_b;
  std::optional<ConnectedMatchingCertificate> violation;
  Json to_json() const;
};

PurificationResult purify_pair(const ColouredGraph& g, const VertexSet& a,
                               const VertexSet& b, Colour keep,
                               long threshold_vertices);

// Same inside a single set; the two wrong colours are handled one at a time
// (red before blue).
PurificationResult purify_inside(const ColouredGraph& g, const VertexSet& a,
                                 Colour keep, long threshold_vertices);

namespace verify {

// Invariant suites used by tests and the certifier transcript.
std::vector<std::string> parity_decomposition_violations(
    const ColouredGraph& g, const ParityDecomposition& d, int m);
std::vector<std::string> xyw_violations(const ColouredGraph& g,
                                        const XYWDecomposition& d);
std::vector<std::string> odd_core_violations(const ColouredGraph& g,
                                             const OddCoreDecomposition& d);

}  // namespace verify

}  // namespace ramsey
