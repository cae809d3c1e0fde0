#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

// Coloured structural classes used as certificate payloads.  Size floors and
// budgets are algebraic thresholds so parameter sets like (alpha - c
// sqrt(eta)) k compare exactly.

struct HStructure {
  VertexSet X1, X2;
  Alg x1 = 0, x2 = 0;   // size floors
  Alg c1 = 0;           // almost-complete budget, in vertices
  Alg c2 = 0;           // completeness/sparseness fraction
  Colour gamma1 = Colour::Red;
  Colour gamma2 = Colour::Blue;
  Json to_json() const;
  static HStructure from_json(const Json& j);
};

struct KStructure {
  VertexSet X1, X2, X3;
  Alg x1 = 0, x2 = 0, x3 = 0;
  Alg c = 0;  // almost-complete budget, in vertices
  Json to_json() const;
  static KStructure from_json(const Json& j);
};

struct KStarStructure {
  VertexSet X1, X2, Y1, Y2;
  Alg x1 = 0, x2 = 0, y1 = 0, y2 = 0, z = 0;
  Alg c = 0;
  Json to_json() const;
  static KStarStructure from_json(const Json& j);
};

struct ClauseViolation {
  std::string clause;
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<ClauseViolation> violations;
  Json to_json() const;
};

ValidationReport validate_H(const ColouredGraph& g, const HStructure& h);
ValidationReport validate_K(const ColouredGraph& g, const KStructure& k);
ValidationReport validate_K_star(const ColouredGraph& g,
                                 const KStarStructure& k);

// Canonical exact witnesses (valid with zero budgets).  Pairs the
// definitions leave unconstrained default to green where green is allowed;
// build_H uses gamma2 for the inside of X2 since H is two-coloured.
ColouredGraph build_H(int x1, int x2, Colour gamma1, Colour gamma2);
ColouredGraph build_K(int x1, int x2, int x3);
ColouredGraph build_K_star(int x1, int x2, int y1, int y2);

enum class StructureClass { H, K, KStar };

struct StructureQuery {
  StructureClass cls = StructureClass::K;
  // floors per class; H uses x1,x2 and gammas; K uses x1..x3; K* all + z.
  Alg x1 = 1, x2 = 1, x3 = 1, y1 = 1, y2 = 1, z = 1;
  Alg c1 = 0, c2 = 0, c = 0;
  Colour gamma1 = Colour::Red;
  Colour gamma2 = Colour::Blue;
};

using StructureCertificate =
    std::variant<HStructure, KStructure, KStarStructure>;

struct FindResult {
  std::optional<StructureCertificate> found;
  bool exhaustive = false;        // absence is definitive only if true
  bool budget_exhausted = false;
  long partitions_checked = 0;
  long restarts_used = 0;
};

// Exhaustive ordered-partition search for n <= 12, seeded local search above
// that.  `budget` caps local-search restarts (and is ignored by the
// exhaustive branch).
FindResult find_structure(const ColouredGraph& g, const StructureQuery& q,
                          long budget = 200);

// Seeds for the local search; the certifier passes its decomposition parts.
FindResult find_structure_seeded(const ColouredGraph& g,
                                 const StructureQuery& q,
                                 const std::vector<VertexSet>& seed_parts,
                                 long budget = 200);

Json alg_to_json(const Alg& a);
Alg alg_from_json(const Json& j);

}  // namespace ramsey
