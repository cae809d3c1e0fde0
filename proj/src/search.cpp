#include "ramsey/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <sstream>

namespace ramsey {

Json SearchReport::to_json() const {
  Json j;
  j["schema"] = "searchreport/1";
  j["N"] = n;
  j["verdict"] = verdict == Verdict::AllColouringsHit
                     ? "all-colourings-hit"
                     : verdict == Verdict::WitnessFound ? "witness-found"
                                                        : "budget-exceeded";
  if (witness) j["witness"] = witness->to_json();
  j["colourings_examined"] = colourings_examined;
  j["nodes_expanded"] = nodes_expanded;
  j["hit_prunes"] = hit_prunes;
  j["symmetry_prunes"] = symmetry_prunes;
  j["threads"] = threads;
  return j;
}

namespace {

struct EdgeList {
  std::vector<std::pair<int, int>> edges;
  explicit EdgeList(int n) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
};

Colour colour_of_value(int c) { return static_cast<Colour>(c); }

// One DFS over the edges of K_n with a fixed first-row prefix.
struct Worker {
  int n;
  const SearchTargets& targets;
  const EdgeList& list;
  bool prune;
  std::uint64_t budget;

  std::vector<int> assign;                    // colour per edge, -1 unset
  std::vector<std::vector<std::uint8_t>> adj; // [colour][u*n+v]
  std::uint64_t examined = 0, nodes = 0, hits = 0;
  bool exceeded = false;
  std::optional<std::vector<int>> witness;
  const std::atomic<long>* stop_before = nullptr;  // shard cancellation
  long shard_index = 0;

  Worker(int nn, const SearchTargets& t, const EdgeList& el, bool pr,
         std::uint64_t b)
      : n(nn), targets(t), list(el), prune(pr), budget(b),
        assign(el.edges.size(), -1),
        adj(t.colours(), std::vector<std::uint8_t>(nn * nn, 0)) {}

  void set_edge(int idx, int c) {
    auto [u, v] = list.edges[idx];
    assign[idx] = c;
    adj[c][u * n + v] = adj[c][v * n + u] = 1;
  }
  void clear_edge(int idx) {
    auto [u, v] = list.edges[idx];
    int c = assign[idx];
    adj[c][u * n + v] = adj[c][v * n + u] = 0;
    assign[idx] = -1;
  }

  // Cycle of exactly `len` in colour c passing through (u, v), over the
  // currently assigned edges.
  bool cycle_through(int c, int u, int v, int len) {
    std::vector<std::uint8_t> on_path(n, 0);
    on_path[u] = on_path[v] = 1;
    return path_to(c, v, u, len - 1, on_path);
  }
  bool path_to(int c, int from, int to, int remaining,
               std::vector<std::uint8_t>& on_path) {
    if (remaining == 1) return adj[c][from * n + to];
    for (int w = 0; w < n; ++w) {
      if (on_path[w] || !adj[c][from * n + w]) continue;
      on_path[w] = 1;
      if (path_to(c, w, to, remaining - 1, on_path)) {
        on_path[w] = 0;
        return true;
      }
      on_path[w] = 0;
    }
    return false;
  }

  bool leaf_has_target() {
    for (int c = 0; c < targets.colours(); ++c) {
      int len = targets.lengths[c];
      for (size_t i = 0; i < list.edges.size(); ++i)
        if (assign[i] == c &&
            cycle_through(c, list.edges[i].first, list.edges[i].second, len))
          return true;
    }
    return false;
  }

  // Returns false when a target-free leaf (witness) is found.
  bool dfs(size_t idx) {
    if (stop_before && stop_before->load(std::memory_order_relaxed) <
                           shard_index)
      return true;  // a smaller shard already holds a witness
    if (witness || exceeded) return !witness;
    if (++nodes > budget) {
      exceeded = true;
      return true;
    }
    if (idx == list.edges.size()) {
      ++examined;
      if (!prune && leaf_has_target()) return true;
      witness = assign;
      return false;
    }
    auto [u, v] = list.edges[idx];
    for (int c = 0; c < targets.colours(); ++c) {
      set_edge(idx, c);
      bool hit = prune && cycle_through(c, u, v, targets.lengths[c]);
      if (hit) {
        ++hits;
        ++examined;
        clear_edge(idx);
        continue;
      }
      if (!dfs(idx + 1)) {
        clear_edge(idx);
        return false;
      }
      clear_edge(idx);
      if (exceeded) return true;
    }
    return true;
  }
};

}  // namespace

SearchReport ramsey_search(const SearchTargets& targets, int n,
                           std::uint64_t budget, std::uint64_t /*seed*/,
                           int threads, bool prune) {
  if (targets.colours() != 2 && targets.colours() != 3)
    throw PreconditionError("search needs 2 or 3 target cycles");
  for (int len : targets.lengths)
    if (len < 3) throw PreconditionError("target cycle lengths must be >= 3");
  if (n < 3) throw PreconditionError("N must be at least 3");
  EdgeList list(n);
  double space =
      std::pow(double(targets.colours()), double(list.edges.size()));
  if (space > 1e13)
    throw PreconditionError(
        "colouring space too large even with pruning; refuse");

  SearchReport rep;
  rep.n = n;
  rep.threads = std::max(1, threads);

  // First-row prefixes; with pruning only the sorted ones survive, which
  // covers every isomorphism class (sort the row by permuting vertices
  // 1..N-1).
  int row = n - 1;
  std::vector<std::vector<int>> prefixes;
  std::vector<int> cur(row, 0);
  std::uint64_t skipped = 0;
  while (true) {
    bool sorted = std::is_sorted(cur.begin(), cur.end());
    if (!prune || sorted)
      prefixes.push_back(cur);
    else
      ++skipped;
    int i = row - 1;
    while (i >= 0 && cur[i] == targets.colours() - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  rep.symmetry_prunes = skipped;

  std::atomic<long> best_shard{static_cast<long>(prefixes.size())};
  auto run_shard = [&](long index) {
    Worker w(n, targets, list, prune, budget);
    w.stop_before = &best_shard;
    w.shard_index = index;
    const auto& pre = prefixes[index];
    bool dead = false;
    for (int i = 0; i < row && !dead; ++i) {
      auto [u, v] = list.edges[i];
      w.set_edge(i, pre[i]);
      if (prune && w.cycle_through(pre[i], u, v, targets.lengths[pre[i]])) {
        ++w.hits;
        ++w.examined;
        dead = true;
      }
    }
    if (!dead) w.dfs(row);
    if (w.witness) {
      long expect = static_cast<long>(prefixes.size());
      long mine = index;
      while (!best_shard.compare_exchange_weak(expect, mine) &&
             expect > mine) {
      }
    }
    return w;
  };

  std::vector<Worker> results;
  results.reserve(prefixes.size());
  if (rep.threads <= 1) {
    for (long i = 0; i < long(prefixes.size()); ++i)
      results.push_back(run_shard(i));
  } else {
    std::vector<std::future<Worker>> futs;
    futs.reserve(prefixes.size());
    for (long i = 0; i < long(prefixes.size()); ++i)
      futs.push_back(std::async(std::launch::async, run_shard, i));
    for (auto& f : futs) results.push_back(f.get());
  }

  bool exceeded = false;
  std::optional<std::vector<int>> witness_assign;
  for (long i = 0; i < long(results.size()); ++i) {
    const auto& w = results[i];
    rep.colourings_examined += w.examined;
    rep.nodes_expanded += w.nodes;
    rep.hit_prunes += w.hits;
    exceeded |= w.exceeded;
    if (w.witness && !witness_assign) witness_assign = w.witness;
  }

  if (witness_assign) {
    std::vector<EdgeSpec> specs;
    for (size_t i = 0; i < list.edges.size(); ++i)
      specs.push_back({list.edges[i].first, list.edges[i].second,
                       ColourSet::of(colour_of_value((*witness_assign)[i]))});
    ColouredGraph g = ColouredGraph::build(n, specs);
    // Independent re-check: the witness must avoid every target cycle.
    for (int c = 0; c < targets.colours(); ++c) {
      CycleQuery q{colour_of_value(c), targets.lengths[c],
                   CycleQuery::Mode::ExactLength};
      auto res = find_mono_cycle(g, q);
      if (res.cycle)
        throw Error("witness failed verification; search bug");
    }
    rep.verdict = SearchReport::Verdict::WitnessFound;
    rep.witness = std::move(g);
    return rep;
  }
  rep.verdict = exceeded ? SearchReport::Verdict::BudgetExceeded
                         : SearchReport::Verdict::AllColouringsHit;
  return rep;
}

const char* pattern_name(LowerBoundPattern p) {
  switch (p) {
    case LowerBoundPattern::TouchSets:
      return "touch-sets";
    case LowerBoundPattern::GreenBipartiteRR:
      return "green-bipartite-rr";
    case LowerBoundPattern::GreenBipartiteBB:
      return "green-bipartite-bb";
  }
  return "?";
}

std::optional<LowerBoundPattern> pattern_from_name(std::string_view s) {
  if (s == "touch-sets") return LowerBoundPattern::TouchSets;
  if (s == "green-bipartite-rr") return LowerBoundPattern::GreenBipartiteRR;
  if (s == "green-bipartite-bb") return LowerBoundPattern::GreenBipartiteBB;
  return std::nullopt;
}

long pattern_order(LowerBoundPattern p, long n, long m, long l) {
  switch (p) {
    case LowerBoundPattern::TouchSets:
      return n / 2 + m / 2 + l - 3;
    case LowerBoundPattern::GreenBipartiteRR:
      return 2 * (n + m / 2 - 2);
    case LowerBoundPattern::GreenBipartiteBB:
      return 2 * (m + n / 2 - 2);
  }
  return 0;
}

ColouredGraph construct_lower_bound(LowerBoundPattern p, long n, long m,
                                    long l) {
  if (n % 2 != 0 || n < 4) throw PreconditionError("n must be even and >= 4");
  if (m % 2 != 0 || m < 4) throw PreconditionError("m must be even and >= 4");
  if (l % 2 == 0 || l < 3) throw PreconditionError("l must be odd and >= 3");
  long order = pattern_order(p, n, m, l);
  std::vector<EdgeSpec> specs;
  auto add = [&](int u, int v, Colour c) {
    specs.push_back({u, v, ColourSet::of(c)});
  };

  switch (p) {
    case LowerBoundPattern::TouchSets: {
      // parts: R of n/2-1, then B of m/2-1, then K of l-1.  Red touches R;
      // blue touches B but not R; green lies inside K.  Any red cycle
      // alternates into R, so its length is at most 2|R| < n; similarly for
      // blue, and the green clique has only short cycles.
      long r_end = n / 2 - 1;
      long b_end = r_end + m / 2 - 1;
      for (int u = 0; u < order; ++u)
        for (int v = u + 1; v < order; ++v) {
          Colour c = Colour::Green;
          if (u < r_end)
            c = Colour::Red;
          else if (u < b_end)
            c = Colour::Blue;
          add(u, v, c);
        }
      break;
    }
    case LowerBoundPattern::GreenBipartiteRR:
    case LowerBoundPattern::GreenBipartiteBB: {
      // Two copies of the classical two-colour extremal pattern joined by a
      // complete bipartite green graph (bipartite, so no odd green cycle).
      bool rr = p == LowerBoundPattern::GreenBipartiteRR;
      long clique = rr ? n - 1 : m - 1;
      long join = rr ? m / 2 - 1 : n / 2 - 1;
      Colour clique_colour = rr ? Colour::Red : Colour::Blue;
      Colour join_colour = rr ? Colour::Blue : Colour::Red;
      long side = clique + join;
      for (int s = 0; s < 2; ++s) {
        int base = int(s * side);
        for (int u = 0; u < side; ++u)
          for (int v = u + 1; v < side; ++v) {
            bool both_clique = u < clique && v < clique;
            add(base + u, base + v,
                both_clique ? clique_colour : join_colour);
          }
      }
      for (int u = 0; u < side; ++u)
        for (int v = 0; v < side; ++v)
          add(u, int(side) + v, Colour::Green);
      break;
    }
  }
  ColouredGraph g = ColouredGraph::build(int(order), specs);
  const std::pair<Colour, long> goals[] = {
      {Colour::Red, n}, {Colour::Blue, m}, {Colour::Green, l}};
  for (auto [colour, len] : goals) {
    if (len > order) continue;
    CycleQuery q{colour, int(len), CycleQuery::Mode::ExactLength};
    auto res = find_mono_cycle(g, q);
    if (res.budget_exceeded)
      throw BudgetError("construction verification ran out of budget");
    if (res.cycle) {
      std::ostringstream os;
      os << "construction contains a " << name(colour) << " cycle of length "
         << len << "; construction bug";
      throw Error(os.str());
    }
  }
  return g;
}

}  // namespace ramsey
