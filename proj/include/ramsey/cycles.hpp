#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

struct CycleQuery {
  Colour colour = Colour::Red;
  int length = 3;
  enum class Mode { ExactLength, AtLeast };
  Mode mode = Mode::ExactLength;
};

struct CycleSearchResult {
  std::optional<std::vector<int>> cycle;
  bool budget_exceeded = false;
  std::uint64_t steps = 0;
};

inline constexpr std::uint64_t kDefaultCycleBudget = 10'000'000;

// Exhaustive backtracking search for a monochromatic cycle.  Exact within
// budget: an empty result with budget_exceeded == false means no such cycle
// exists.
CycleSearchResult find_mono_cycle(const ColouredGraph& g, const CycleQuery& q,
                                  std::uint64_t budget = kDefaultCycleBudget,
                                  const Bits* within = nullptr);

// Hamiltonian cycle by rotation-extension under the minimum-degree-half
// condition; throws PreconditionError naming the worst vertex otherwise.
std::vector<int> dirac_cycle(const ColouredGraph& g, Colour colour,
                             const VertexSet& within);

// Cycle of length >= m under the edge-count bound
// |E| >= (m-1)(K-1)/2 + 1.  Throws PreconditionError if the bound fails and
// BudgetError if the backtracking budget runs out.
std::vector<int> erdos_gallai_cycle(const ColouredGraph& g, Colour colour,
                                    int m,
                                    std::uint64_t budget = kDefaultCycleBudget);

}  // namespace ramsey
