#include "ramsey/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

namespace ramsey {

VertexSet Matching::vertices() const {
  std::vector<int> v;
  v.reserve(edges.size() * 2);
  for (auto [a, b] : edges) {
    v.push_back(a);
    v.push_back(b);
  }
  return VertexSet::of(std::move(v));
}

void Matching::normalize() {
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
}

Json ConnectedMatchingCertificate::to_json() const {
  Json j;
  j["colour"] = name(matching.colour);
  Json es = Json::array();
  for (auto [a, b] : matching.edges) es.push_back(Json::array({a, b}));
  j["edges"] = std::move(es);
  j["component"] = vertex_set_to_json(component);
  j["odd_witness"] = odd_witness ? Json(*odd_witness) : Json(nullptr);
  j["mode"] = mode == ConnectivityMode::ColourComponent ? "colour" : "effective";
  Json tree = Json::array();
  for (int v : component) tree.push_back(Json::array({v, tree_parent[v]}));
  j["tree"] = std::move(tree);
  return j;
}

ConnectedMatchingCertificate ConnectedMatchingCertificate::from_json(
    const Json& j, int n) {
  ConnectedMatchingCertificate c;
  auto col = colour_from_name(j.at("colour").get<std::string>());
  if (!col) throw Error("certificate: unknown colour");
  c.matching.colour = *col;
  for (const auto& e : j.at("edges"))
    c.matching.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  c.matching.normalize();
  c.component = vertex_set_from_json(j.at("component"));
  if (!j.at("odd_witness").is_null())
    c.odd_witness = j.at("odd_witness").get<std::vector<int>>();
  if (j.contains("mode") && j.at("mode") == "effective")
    c.mode = ConnectivityMode::EffectiveComponent;
  c.tree_parent.assign(n, -1);
  if (j.contains("tree")) {
    for (const auto& e : j.at("tree")) {
      int v = e.at(0).get<int>();
      int p = e.at(1).get<int>();
      c.tree_parent[v] = p;
      if (p < 0) c.tree_root = v;
    }
  }
  return c;
}

namespace {

// Deterministic blossom (general maximum matching) on an explicit adjacency
// list.  Greedy initialisation keeps the number of augmenting phases small on
// the dense graphs this engine mostly sees.
class Blossom {
 public:
  explicit Blossom(const std::vector<std::vector<int>>& adj)
      : n_(static_cast<int>(adj.size())),
        adj_(adj),
        match_(n_, -1),
        parent_(n_),
        base_(n_),
        used_(n_),
        in_blossom_(n_) {}

  std::vector<int> solve() {
    for (int v = 0; v < n_; ++v)
      if (match_[v] < 0)
        for (int u : adj_[v])
          if (match_[u] < 0) {
            match_[v] = u;
            match_[u] = v;
            break;
          }
    for (int v = 0; v < n_; ++v)
      if (match_[v] < 0) find_augmenting_path(v);
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> mark(n_, 0);
    while (true) {
      a = base_[a];
      mark[a] = 1;
      if (match_[a] < 0) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (mark[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = 1;
      in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  bool find_augmenting_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    std::queue<int> q;
    used_[root] = 1;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : adj_[v]) {
        if (base_[v] == base_[u] || match_[v] == u) continue;
        if (u == root || (match_[u] >= 0 && parent_[match_[u]] >= 0)) {
          int cur = lca(v, u);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, cur, u);
          mark_path(u, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                q.push(i);
              }
            }
          }
        } else if (parent_[u] < 0) {
          parent_[u] = v;
          if (match_[u] < 0) {
            for (int cur = u; cur != -1;) {
              int prev = parent_[cur];
              int next = (prev >= 0) ? match_[prev] : -1;
              match_[cur] = prev;
              if (prev >= 0) match_[prev] = cur;
              cur = next;
            }
            return true;
          }
          used_[match_[u]] = 1;
          q.push(match_[u]);
        }
      }
    }
    return false;
  }

  int n_;
  const std::vector<std::vector<int>>& adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_, in_blossom_;
};

// Hopcroft-Karp on local indices; side A is 0..na-1, side B follows.
class HopcroftKarp {
 public:
  HopcroftKarp(int na, int nb) : na_(na), nb_(nb), adj_(na) {}

  void add_edge(int a, int b) { adj_[a].push_back(b); }

  int solve() {
    pair_a_.assign(na_, -1);
    pair_b_.assign(nb_, -1);
    int matching = 0;
    while (bfs()) {
      for (int a = 0; a < na_; ++a)
        if (pair_a_[a] < 0 && dfs(a)) ++matching;
    }
    return matching;
  }

  const std::vector<int>& pair_a() const { return pair_a_; }

  // Konig: Z = unmatched A-vertices and everything alternating-reachable;
  // minimum cover = (A \ Z) union (B intersect Z).
  std::pair<std::vector<int>, std::vector<int>> min_cover() const {
    std::vector<char> za(na_, 0), zb(nb_, 0);
    std::queue<int> q;
    for (int a = 0; a < na_; ++a)
      if (pair_a_[a] < 0) {
        za[a] = 1;
        q.push(a);
      }
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : adj_[a]) {
        if (zb[b]) continue;
        if (pair_a_[a] == b) continue;  // only unmatched edges leave A
        zb[b] = 1;
        int a2 = pair_b_[b];
        if (a2 >= 0 && !za[a2]) {
          za[a2] = 1;
          q.push(a2);
        }
      }
    }
    std::vector<int> ca, cb;
    for (int a = 0; a < na_; ++a)
      if (!za[a]) ca.push_back(a);
    for (int b = 0; b < nb_; ++b)
      if (zb[b]) cb.push_back(b);
    return {ca, cb};
  }

 private:
  bool bfs() {
    std::queue<int> q;
    dist_.assign(na_, -1);
    bool found = false;
    for (int a = 0; a < na_; ++a)
      if (pair_a_[a] < 0) {
        dist_[a] = 0;
        q.push(a);
      }
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : adj_[a]) {
        int a2 = pair_b_[b];
        if (a2 < 0)
          found = true;
        else if (dist_[a2] < 0) {
          dist_[a2] = dist_[a] + 1;
          q.push(a2);
        }
      }
    }
    return found;
  }

  bool dfs(int a) {
    for (int b : adj_[a]) {
      int a2 = pair_b_[b];
      if (a2 < 0 || (dist_[a2] == dist_[a] + 1 && dfs(a2))) {
        pair_a_[a] = b;
        pair_b_[b] = a;
        return true;
      }
    }
    dist_[a] = -1;
    return false;
  }

  int na_, nb_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> pair_a_, pair_b_, dist_;
};

std::vector<std::vector<int>> local_adjacency(const ColouredGraph& g,
                                              Colour colour,
                                              const std::vector<int>& verts) {
  std::vector<int> to_local(g.size(), -1);
  for (size_t i = 0; i < verts.size(); ++i) to_local[verts[i]] = int(i);
  std::vector<std::vector<int>> adj(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    const Bits& row = g.neighbours(colour, verts[i]);
    for (int v = row.first(); v >= 0; v = row.next(v))
      if (to_local[v] >= 0) adj[i].push_back(to_local[v]);
  }
  return adj;
}

}  // namespace

Matching max_matching(const ColouredGraph& g, Colour colour,
                      const VertexSet* within) {
  std::vector<int> verts =
      within ? std::vector<int>(within->begin(), within->end())
             : VertexSet::range(0, g.size()).items();
  if (within) {
    for (int v : *within)
      if (v < 0 || v >= g.size())
        throw PreconditionError("within contains out-of-range vertex");
  }
  auto adj = local_adjacency(g, colour, verts);
  Blossom b(adj);
  auto match = b.solve();
  Matching m;
  m.colour = colour;
  for (size_t i = 0; i < match.size(); ++i)
    if (match[i] >= 0 && int(i) < match[i])
      m.edges.emplace_back(verts[i], verts[match[i]]);
  m.normalize();
  return m;
}

BipartiteMatchingWithCover max_bipartite_matching_with_cover(
    const ColouredGraph& g, Colour colour, const VertexSet& a,
    const VertexSet& b) {
  if (!a.disjoint_from(b))
    throw PreconditionError("bipartite matching sides overlap");
  std::vector<int> av(a.begin(), a.end()), bv(b.begin(), b.end());
  std::vector<int> b_local(g.size(), -1);
  for (size_t i = 0; i < bv.size(); ++i) b_local[bv[i]] = int(i);
  HopcroftKarp hk(int(av.size()), int(bv.size()));
  Bits bmask = b.mask(g.size());
  for (size_t i = 0; i < av.size(); ++i) {
    Bits row = g.neighbours(colour, av[i]);
    row &= bmask;
    for (int v = row.first(); v >= 0; v = row.next(v))
      hk.add_edge(int(i), b_local[v]);
  }
  hk.solve();
  BipartiteMatchingWithCover out;
  out.matching.colour = colour;
  const auto& pa = hk.pair_a();
  for (size_t i = 0; i < av.size(); ++i)
    if (pa[i] >= 0) out.matching.edges.emplace_back(av[i], bv[pa[i]]);
  out.matching.normalize();
  auto [ca, cb] = hk.min_cover();
  std::vector<int> ca_g, cb_g;
  for (int i : ca) ca_g.push_back(av[i]);
  for (int i : cb) cb_g.push_back(bv[i]);
  out.cover_a = VertexSet::of(std::move(ca_g));
  out.cover_b = VertexSet::of(std::move(cb_g));
  return out;
}

Matching max_bipartite_matching(const ColouredGraph& g, Colour colour,
                                const VertexSet& a, const VertexSet& b) {
  return max_bipartite_matching_with_cover(g, colour, a, b).matching;
}

ConnectedMatchingCertificate certify_matching(const ColouredGraph& g,
                                              const Matching& m,
                                              ConnectivityMode mode,
                                              const Bits* within) {
  ConnectedMatchingCertificate cert;
  cert.matching = m;
  cert.mode = mode;
  cert.tree_parent.assign(g.size(), -1);
  if (m.edges.empty()) return cert;

  int start = m.edges.front().first;
  for (auto [x, y] : m.edges) start = std::min({start, x, y});

  // BFS over the connecting relation from the component's smallest matched
  // vertex; records the parent-pointer tree the verifier replays.
  Bits scope = within ? *within : Bits::full(g.size());
  std::vector<int> queue{start};
  Bits seen(g.size());
  seen.set(start);
  cert.tree_root = start;
  size_t qi = 0;
  while (qi < queue.size()) {
    int u = queue[qi++];
    Bits row = mode == ConnectivityMode::ColourComponent
                   ? g.neighbours(m.colour, u)
                   : g.neighbours_any(u);
    row &= scope;
    for (int v = row.first(); v >= 0; v = row.next(v)) {
      if (!seen.test(v)) {
        seen.set(v);
        cert.tree_parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  cert.component = VertexSet::of(std::move(queue));

  if (mode == ConnectivityMode::ColourComponent) {
    auto comps = mono_components(g, m.colour, &seen);
    if (!comps.components.empty() && comps.components.front().odd)
      cert.odd_witness = comps.components.front().odd_cycle;
  }
  return cert;
}

ConnectedMatchingCertificate largest_connected_matching(
    const ColouredGraph& g, Colour colour, ConnectivityMode mode,
    const Bits* within) {
  ComponentList comps = mode == ConnectivityMode::ColourComponent
                            ? mono_components(g, colour, within)
                            : ambient_components(g, within);
  Matching best;
  best.colour = colour;
  VertexSet best_comp;
  bool have = false;
  for (const auto& comp : comps.components) {
    Matching m = max_matching(g, colour, &comp.vertices);
    if (m.edges.empty()) continue;
    // Ties broken by lowest component minimum vertex; components arrive in
    // that order already.
    if (!have || m.size() > best.size()) {
      best = std::move(m);
      best_comp = comp.vertices;
      have = true;
    }
  }
  if (!have) {
    ConnectedMatchingCertificate empty;
    empty.matching.colour = colour;
    empty.tree_parent.assign(g.size(), -1);
    return empty;
  }
  Bits comp_mask = best_comp.mask(g.size());
  return certify_matching(g, best, mode, &comp_mask);
}

ConnectedMatchingCertificate largest_odd_connected_matching(
    const ColouredGraph& g, Colour colour, const Bits* within) {
  ComponentList comps = mono_components(g, colour, within);
  Matching best;
  best.colour = colour;
  VertexSet best_comp;
  std::optional<std::vector<int>> best_witness;
  bool have = false;
  for (const auto& comp : comps.components) {
    if (!comp.odd) continue;
    Matching m = max_matching(g, colour, &comp.vertices);
    if (m.edges.empty()) continue;
    if (!have || m.size() > best.size()) {
      best = std::move(m);
      best_comp = comp.vertices;
      best_witness = comp.odd_cycle;
      have = true;
    }
  }
  if (!have) {
    ConnectedMatchingCertificate empty;
    empty.matching.colour = colour;
    empty.tree_parent.assign(g.size(), -1);
    return empty;
  }
  Bits comp_mask = best_comp.mask(g.size());
  auto cert =
      certify_matching(g, best, ConnectivityMode::ColourComponent, &comp_mask);
  if (!cert.odd_witness) cert.odd_witness = best_witness;
  return cert;
}

ConnectedMatchingCertificate greedy_almost_complete_matching(
    const ColouredGraph& g, Colour colour, const VertexSet& a,
    const VertexSet& b, int almost, int l) {
  if (!(a.size() >= b.size() && b.size() >= l && l >= 1))
    throw PreconditionError("requires |A| >= |B| >= l >= 1");
  if (!(2 * almost < l))
    throw PreconditionError("requires a/l < 1/2");
  auto rep = bipartite_completeness(g, a, b, colour);
  if (rep.a_almost > almost) {
    std::ostringstream os;
    os << "cross graph is only " << rep.a_almost
       << "-almost-complete, needed " << almost;
    throw PreconditionError(os.str());
  }

  Bits unmatched_a = a.mask(g.size());
  Matching m;
  m.colour = colour;
  for (int v : b) {
    Bits candidates = g.neighbours(colour, v);
    candidates &= unmatched_a;
    int u = candidates.first();
    if (u < 0) continue;  // fewer than |B| - a of these can occur
    unmatched_a.reset(u);
    m.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  m.normalize();

  // Connectivity comes from (1 - a/l)-completeness of the cross graph; build
  // the tree over cross edges only.
  ConnectedMatchingCertificate cert;
  cert.matching = m;
  cert.mode = ConnectivityMode::ColourComponent;
  cert.tree_parent.assign(g.size(), -1);
  if (m.edges.empty()) return cert;
  Bits amask = a.mask(g.size());
  Bits bmask = b.mask(g.size());
  Bits both = amask;
  both |= bmask;
  int root = a.min();
  cert.tree_root = root;
  Bits seen(g.size());
  seen.set(root);
  std::vector<int> queue{root};
  size_t qi = 0;
  while (qi < queue.size()) {
    int u = queue[qi++];
    Bits row = g.neighbours(colour, u);
    row &= (amask.test(u) ? bmask : amask);  // cross edges only
    for (int v = row.first(); v >= 0; v = row.next(v))
      if (!seen.test(v)) {
        seen.set(v);
        cert.tree_parent[v] = u;
        queue.push_back(v);
      }
  }
  cert.component = VertexSet::of(std::move(queue));
  return cert;
}

namespace verify {

std::vector<std::string> certificate_violations(
    const ColouredGraph& g, const ConnectedMatchingCertificate& cert) {
  std::vector<std::string> out;
  auto fail = [&](const std::string& s) { out.push_back(s); };
  const Colour colour = cert.matching.colour;

  std::vector<char> used(g.size(), 0);
  for (auto [u, v] : cert.matching.edges) {
    if (u < 0 || v < 0 || u >= g.size() || v >= g.size() || u == v) {
      fail("matching edge endpoints out of range");
      continue;
    }
    if (used[u] || used[v]) fail("matching edges are not vertex-disjoint");
    used[u] = used[v] = 1;
    if (!g.has(colour, u, v)) {
      std::ostringstream os;
      os << "edge (" << u << "," << v << ") absent or lacks colour "
         << name(colour);
      fail(os.str());
    }
    if (!cert.component.contains(u) || !cert.component.contains(v))
      fail("matching vertex outside the claimed component");
  }

  if (!cert.matching.edges.empty()) {
    // Spanning-tree replay: every component vertex except the root must point
    // at an in-component parent along an edge of the right kind, and walking
    // parents must reach the root without cycles.
    if (cert.tree_root < 0 || !cert.component.contains(cert.tree_root))
      fail("tree root missing or outside component");
    for (int v : cert.component) {
      if (v == cert.tree_root) continue;
      int p = cert.tree_parent.size() > size_t(v) ? cert.tree_parent[v] : -1;
      if (p < 0 || !cert.component.contains(p)) {
        fail("component vertex lacks an in-component tree parent");
        continue;
      }
      bool edge_ok = cert.mode == ConnectivityMode::ColourComponent
                         ? g.has(colour, v, p)
                         : g.has_edge(v, p);
      if (!edge_ok) fail("tree edge not present in the required subgraph");
    }
    // Acyclicity / rootedness by walking up with a step budget.
    for (int v : cert.component) {
      int steps = 0;
      int cur = v;
      while (cur != cert.tree_root && steps <= g.size()) {
        cur = (cur >= 0 && cur < int(cert.tree_parent.size()))
                  ? cert.tree_parent[cur]
                  : -1;
        if (cur < 0) break;
        ++steps;
      }
      if (cur != cert.tree_root) {
        fail("tree walk does not reach the root");
        break;
      }
    }
  }

  if (cert.odd_witness) {
    const auto& w = *cert.odd_witness;
    if (w.size() < 3 || w.size() % 2 == 0)
      fail("odd witness must be a closed walk of odd length >= 3");
    for (size_t i = 0; i < w.size(); ++i) {
      int u = w[i];
      int v = w[(i + 1) % w.size()];
      if (u < 0 || u >= g.size() || !g.has(colour, u, v)) {
        fail("odd witness uses a non-edge of the colour subgraph");
        break;
      }
      if (!cert.component.contains(u)) {
        fail("odd witness leaves the component");
        break;
      }
    }
  }
  return out;
}

bool certificate_ok(const ColouredGraph& g,
                    const ConnectedMatchingCertificate& cert) {
  return certificate_violations(g, cert).empty();
}

}  // namespace verify

}  // namespace ramsey
