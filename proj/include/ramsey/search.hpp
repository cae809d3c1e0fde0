#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ramsey/cycles.hpp"

namespace ramsey {

// Cycle lengths to avoid, one per colour (2 or 3 colours).  Standard Ramsey
// semantics: one colour per edge; multicolourings are a proof device only.
struct SearchTargets {
  std::vector<int> lengths;
  int colours() const { return static_cast<int>(lengths.size()); }
};

struct SearchReport {
  int n = 0;
  enum class Verdict { AllColouringsHit, WitnessFound, BudgetExceeded };
  Verdict verdict = Verdict::AllColouringsHit;
  std::optional<ColouredGraph> witness;
  std::uint64_t colourings_examined = 0;  // leaves decided
  std::uint64_t nodes_expanded = 0;
  std::uint64_t hit_prunes = 0;           // subtrees closed by an early hit
  std::uint64_t symmetry_prunes = 0;      // first-row isomorph rejection
  int threads = 1;
  Json to_json() const;
};

// Exhaustively colours the edges of K_N and reports whether every colouring
// contains some target cycle.  Isomorph rejection keeps only colourings
// whose first-row colour sequence is sorted; early hit pruning closes a
// branch as soon as a partial colouring already contains a target.  With
// `prune` false the naive full enumeration runs (used for cross-checks).
SearchReport ramsey_search(const SearchTargets& targets, int n,
                           std::uint64_t budget = 50'000'000,
                           std::uint64_t seed = 0, int threads = 1,
                           bool prune = true);

enum class LowerBoundPattern { TouchSets, GreenBipartiteRR, GreenBipartiteBB };

const char* pattern_name(LowerBoundPattern p);
std::optional<LowerBoundPattern> pattern_from_name(std::string_view s);

// Order of the graph each pattern emits.
long pattern_order(LowerBoundPattern p, long n, long m, long l);

// Builds the extremal colouring and certifies it free of red C_n, blue C_m
// and green C_l with the cycle searcher before returning.  These are derived
// extremal patterns realizing the formula's lower-bound values.
ColouredGraph construct_lower_bound(LowerBoundPattern p, long n, long m,
                                    long l);

}  // namespace ramsey
