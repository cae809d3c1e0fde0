#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/cycles.hpp"
#include "ramsey/matching.hpp"

namespace ramsey {

// A lemma conclusion (or counterexample report) with verification status.
// `tag` selects the lemma's outcome case; "counterexample" marks a bound the
// exact search failed to meet, surfaced as an artefact instead of a panic.
struct SlackEntry {
  std::string name;
  std::string required;
  std::string achieved;
  bool ok = true;
};

struct LemmaOutcome {
  std::string lemma;
  std::string tag;
  std::optional<ConnectedMatchingCertificate> certificate;
  std::vector<std::pair<std::string, VertexSet>> parts;
  std::vector<SlackEntry> slack;
  bool verified = false;

  bool counterexample() const { return tag == "counterexample"; }
  Json to_json() const;
};

// Certificate with >= m matched vertices whenever the colour subgraph has
// average degree >= m.
ConnectedMatchingCertificate connected_matching_from_degree(
    const ColouredGraph& g, Colour colour, int m);

// Largest monochromatic component of a two-coloured (1-eta)-complete graph;
// asserts |F| >= (1-3 eta) K.
LemmaOutcome largest_component_two_coloured(const ColouredGraph& g,
                                            const Rational& eta);

// One-hole variant: either a component on (1-2 sqrt(eta)) K vertices, or
// red- and blue-star centres inside the hole.
LemmaOutcome one_hole_analysis(const ColouredGraph& g, const VertexSet& w,
                               const Rational& eta);

// Two-hole (bipartite) variant with the four-way case ladder.
LemmaOutcome two_holes_analysis(const ColouredGraph& g, const VertexSet& a,
                                const VertexSet& b, const Rational& eta);

// Connected-matching on >= 2(1-3 eps)|B| vertices in an (1-eps)-dense
// bipartite colour graph.
ConnectedMatchingCertificate dense_bipartite_matching(const ColouredGraph& g,
                                                      Colour colour,
                                                      const VertexSet& a,
                                                      const VertexSet& b,
                                                      const Rational& eps);

// Best-effort detector for the matching-or-structured-partition alternative
// in two-multicoloured almost-complete graphs.  Returned partitions are
// always verified; "inconclusive" is a legal answer.
struct SkbOptions {
  Rational eta_ceiling = rat(1);  // relaxed desk-scale default; paper: 1e-20
  Rational precondition_slack = rat(1);  // relaxes beta >= 100 sqrt(eta) alpha
  int repair_rounds = 60;
};
LemmaOutcome red_blue_structure_detector(const ColouredGraph& g,
                                         const Rational& alpha,
                                         const Rational& beta,
                                         const Rational& eta, long k,
                                         const SkbOptions& opt = {});

// Red or blue connected-matching on (2/3 - 7 eps^(1/8)) k vertices in a
// two-multicoloured almost-complete graph.
LemmaOutcome balanced_two_colour_matching(const ColouredGraph& g,
                                          const Rational& eps, long k,
                                          const Rational& eps_ceiling = rat(1));

// Some colour i admits a connected-matching on (alpha_i + eta) k vertices.
LemmaOutcome three_colour_matching_check(const ColouredGraph& g,
                                         const Rational& a1,
                                         const Rational& a2,
                                         const Rational& a3,
                                         const Rational& eta, long k,
                                         const Rational& slack = rat(1));

// Red matching on (alpha + eta) k or blue on (beta + eta) k vertices in a
// two-multicoloured graph with one hole.
LemmaOutcome hole_tolerant_matching(const ColouredGraph& g, const VertexSet& w,
                                    const Rational& alpha,
                                    const Rational& beta, const Rational& v,
                                    const Rational& eta, long k,
                                    const Rational& slack = rat(1));

namespace verify {

// Definition-level re-checks; recomputation uses union-find and raw edge
// scans only, no producer search code.
bool lemma_outcome_ok(const ColouredGraph& g, const LemmaOutcome& o);

// Claimed set is connected in the colour subgraph and no colour edge leaves
// it (i.e. it is a full monochromatic component).
bool is_mono_component(const ColouredGraph& g, Colour c, const VertexSet& vs);

// Largest monochromatic component size recomputed from scratch.
int largest_mono_component_size(const ColouredGraph& g);

}  // namespace verify

// Helpers shared by lemma preconditions.
Alg sqrt_term(const Rational& coeff, const Rational& eta, long k);
bool graph_is_two_coloured(const ColouredGraph& g);
// Minimum-degree completeness: delta >= (1 - c)(K - 1).
bool is_fraction_complete(const ColouredGraph& g, const Rational& c);
// delta >= (K - 1) - a.
bool is_almost_complete(const ColouredGraph& g, const Rational& a);
// Same, exempting pairs inside `hole` (graph obtained by cutting a hole).
bool is_almost_complete_outside_hole(const ColouredGraph& g,
                                     const VertexSet& hole, const Rational& a);

}  // namespace ramsey
