#include "ramsey/cycles.hpp"

#include <algorithm>
#include <sstream>

namespace ramsey {

namespace {

struct ExactSearch {
  const ColouredGraph& g;
  Colour colour;
  int length;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  bool exceeded = false;
  Bits scope;
  std::vector<int> path;
  Bits on_path;
  std::optional<std::vector<int>> found;

  ExactSearch(const ColouredGraph& gg, Colour c, int len, std::uint64_t b,
              const Bits* within)
      : g(gg), colour(c), length(len), budget(b),
        scope(within ? *within : Bits::full(gg.size())),
        on_path(gg.size()) {}

  // Canonical orientation: the cycle starts at its minimum vertex and its
  // second vertex is smaller than its last, so each cycle is visited once.
  void run() {
    for (int s = scope.first(); s >= 0 && !found && !exceeded;
         s = scope.next(s)) {
      path.assign(1, s);
      on_path.set(s);
      extend(s, s);
      on_path.reset(s);
    }
  }

  void extend(int s, int u) {
    if (found || exceeded) return;
    if (++steps > budget) {
      exceeded = true;
      return;
    }
    int depth = static_cast<int>(path.size());
    if (depth == length) {
      if (g.has(colour, u, s) && path[1] < path.back()) found = path;
      return;
    }
    Bits cand = g.neighbours(colour, u);
    cand &= scope;
    for (int v = cand.first(); v >= 0; v = cand.next(v)) {
      if (v <= s || on_path.test(v)) continue;
      path.push_back(v);
      on_path.set(v);
      extend(s, v);
      path.pop_back();
      on_path.reset(v);
      if (found || exceeded) return;
    }
  }
};

}  // namespace

CycleSearchResult find_mono_cycle(const ColouredGraph& g, const CycleQuery& q,
                                  std::uint64_t budget, const Bits* within) {
  if (q.length < 3) throw PreconditionError("cycle length must be >= 3");
  CycleSearchResult out;
  int scope_size =
      within ? within->count() : g.size();
  if (q.mode == CycleQuery::Mode::ExactLength) {
    if (q.length > scope_size) return out;
    ExactSearch s(g, q.colour, q.length, budget, within);
    s.run();
    out.cycle = s.found;
    out.steps = s.steps;
    out.budget_exceeded = s.exceeded;
    return out;
  }
  std::uint64_t used = 0;
  for (int len = q.length; len <= scope_size; ++len) {
    ExactSearch s(g, q.colour, len, budget - used, within);
    s.run();
    used += s.steps;
    out.steps = used;
    if (s.found) {
      out.cycle = s.found;
      return out;
    }
    if (s.exceeded) {
      out.budget_exceeded = true;
      return out;
    }
  }
  return out;
}

std::vector<int> dirac_cycle(const ColouredGraph& g, Colour colour,
                             const VertexSet& within) {
  int m = within.size();
  if (m < 3) throw PreconditionError("dirac cycle needs at least 3 vertices");
  Bits scope = within.mask(g.size());
  int worst = -1, worst_deg = g.size() + 1;
  for (int v : within) {
    int d = g.neighbours(colour, v).count_and(scope);
    if (d < worst_deg) {
      worst_deg = d;
      worst = v;
    }
  }
  if (2 * worst_deg < m) {
    std::ostringstream os;
    os << "degree condition fails: vertex " << worst << " has degree "
       << worst_deg << " < " << m << "/2";
    throw PreconditionError(os.str());
  }

  auto adjacent = [&](int u, int v) { return g.has(colour, u, v); };

  std::vector<int> path{within.min()};
  Bits used(g.size());
  used.set(path[0]);

  auto extend_ends = [&]() {
    bool grew = true;
    while (grew) {
      grew = false;
      Bits cand = g.neighbours(colour, path.back());
      cand &= scope;
      cand.and_not(used);
      int v = cand.first();
      if (v >= 0) {
        path.push_back(v);
        used.set(v);
        grew = true;
        continue;
      }
      Bits cand2 = g.neighbours(colour, path.front());
      cand2 &= scope;
      cand2.and_not(used);
      v = cand2.first();
      if (v >= 0) {
        path.insert(path.begin(), v);
        used.set(v);
        grew = true;
      }
    }
  };

  // Closes a maximal path into a cycle on its vertex set.  Either the ends
  // are adjacent or the usual crossing pair exists by the degree condition.
  auto close_cycle = [&]() -> std::vector<int> {
    int k = static_cast<int>(path.size()) - 1;
    if (adjacent(path.front(), path.back())) return path;
    for (int i = 0; i + 1 <= k; ++i) {
      if (adjacent(path[i], path.back()) && adjacent(path[i + 1], path.front())) {
        std::vector<int> cycle(path.begin(), path.begin() + i + 1);
        for (int j = k; j >= i + 1; --j) cycle.push_back(path[j]);
        return cycle;
      }
    }
    throw Error("rotation step failed; degree precondition was violated");
  };

  while (true) {
    extend_ends();
    std::vector<int> cycle = close_cycle();
    if (static_cast<int>(cycle.size()) == m) {
      for (size_t i = 0; i < cycle.size(); ++i)
        if (!adjacent(cycle[i], cycle[(i + 1) % cycle.size()]))
          throw Error("constructed cycle failed verification");
      return cycle;
    }
    // Break the cycle at a vertex adjacent to the outside and grow the path.
    int outside = -1, attach_pos = -1;
    for (size_t i = 0; i < cycle.size() && outside < 0; ++i) {
      Bits cand = g.neighbours(colour, cycle[i]);
      cand &= scope;
      cand.and_not(used);
      int v = cand.first();
      if (v >= 0) {
        outside = v;
        attach_pos = static_cast<int>(i);
      }
    }
    if (outside < 0)
      throw Error("graph disconnected; degree precondition was violated");
    std::vector<int> new_path{outside};
    for (size_t step = 0; step < cycle.size(); ++step)
      new_path.push_back(cycle[(attach_pos + step) % cycle.size()]);
    path = std::move(new_path);
    used.set(outside);
  }
}

std::vector<int> erdos_gallai_cycle(const ColouredGraph& g, Colour colour,
                                    int m, std::uint64_t budget) {
  int k = g.size();
  if (m < 3 || m > k)
    throw PreconditionError("requires 3 <= m <= vertex count");
  long e2 = 2L * g.edge_count(colour);
  long need2 = static_cast<long>(m - 1) * (k - 1) + 2;
  if (e2 < need2) {
    std::ostringstream os;
    os << "edge count " << g.edge_count(colour) << " below bound ("
       << need2 << "/2)";
    throw PreconditionError(os.str());
  }
  CycleQuery q{colour, m, CycleQuery::Mode::AtLeast};
  auto res = find_mono_cycle(g, q, budget);
  if (res.budget_exceeded)
    throw BudgetError("cycle search budget exceeded");
  if (!res.cycle)
    throw Error("edge bound held but no cycle found; internal error");
  return *res.cycle;
}

}  // namespace ramsey
