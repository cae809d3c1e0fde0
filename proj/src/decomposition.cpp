#include "ramsey/decomposition.hpp"

#include <algorithm>
#include <set>

namespace ramsey {

Json ParityDecomposition::to_json() const {
  Json j;
  j["kind"] = "parity";
  j["bipartite_part"] = vertex_set_to_json(bipartite_part);
  j["odd_part"] = vertex_set_to_json(odd_part);
  Json bp = Json::array();
  for (const auto& [x, y] : bipartitions)
    bp.push_back({{"side_a", vertex_set_to_json(x)},
                  {"side_b", vertex_set_to_json(y)}});
  j["bipartitions"] = std::move(bp);
  j["odd_part_green_edges"] = odd_part_green_edges;
  return j;
}

ParityDecomposition green_parity_decomposition(const ColouredGraph& g, int m) {
  if (m < 3) throw PreconditionError("requires m >= 3");
  auto comps = mono_components(g, Colour::Green);
  for (const auto& comp : comps.components) {
    if (!comp.odd) continue;
    Matching inside = max_matching(g, Colour::Green, &comp.vertices);
    if (inside.vertex_count() >= m) {
      Bits mask = comp.vertices.mask(g.size());
      auto cert = certify_matching(g, inside,
                                   ConnectivityMode::ColourComponent, &mask);
      if (!cert.odd_witness) cert.odd_witness = comp.odd_cycle;
      throw OddMatchingFound(std::move(cert));
    }
  }
  ParityDecomposition out;
  std::vector<int> vprime, vdprime;
  for (const auto& comp : comps.components) {
    if (comp.odd) {
      for (int v : comp.vertices) vdprime.push_back(v);
    } else {
      for (int v : comp.vertices) vprime.push_back(v);
      // Recover the 2-colouring of this bipartite component.
      Bits mask = comp.vertices.mask(g.size());
      std::vector<int> side(g.size(), -1);
      std::vector<int> qs{comp.vertices.min()};
      side[qs[0]] = 0;
      size_t qi = 0;
      std::vector<int> sa, sb;
      while (qi < qs.size()) {
        int u = qs[qi++];
        (side[u] == 0 ? sa : sb).push_back(u);
        Bits row = g.neighbours(Colour::Green, u);
        row &= mask;
        for (int v = row.first(); v >= 0; v = row.next(v))
          if (side[v] < 0) {
            side[v] = 1 - side[u];
            qs.push_back(v);
          }
      }
      out.bipartitions.emplace_back(VertexSet::of(sa), VertexSet::of(sb));
    }
  }
  // Green-isolated vertices are bipartite singletons.
  for (int v : comps.isolated) vprime.push_back(v);
  out.bipartite_part = VertexSet::of(std::move(vprime));
  out.odd_part = VertexSet::of(std::move(vdprime));
  Bits odd_mask = out.odd_part.mask(g.size());
  int inner = 0;
  for (const auto& [u, v, cs] : g.edges())
    if (cs.has(Colour::Green) && odd_mask.test(u) && odd_mask.test(v)) ++inner;
  out.odd_part_green_edges = inner;
  return out;
}

Json XYWDecomposition::to_json() const {
  Json j;
  j["kind"] = "xyw";
  j["X"] = vertex_set_to_json(X);
  j["Y"] = vertex_set_to_json(Y);
  j["W"] = vertex_set_to_json(W);
  return j;
}

XYWDecomposition green_xyw(const ColouredGraph& g) {
  auto comps = mono_components(g, Colour::Green);
  std::vector<int> xs, ys, ws;
  // Bipartite components first, larger side to the lighter of X/Y; then
  // green-isolated vertices one by one; finally enforce |X| >= |Y|.
  std::vector<std::pair<VertexSet, VertexSet>> sides;
  for (const auto& comp : comps.components) {
    if (comp.odd) {
      for (int v : comp.vertices) ws.push_back(v);
      continue;
    }
    Bits mask = comp.vertices.mask(g.size());
    std::vector<int> side(g.size(), -1);
    std::vector<int> qs{comp.vertices.min()};
    side[qs[0]] = 0;
    size_t qi = 0;
    std::vector<int> sa, sb;
    while (qi < qs.size()) {
      int u = qs[qi++];
      (side[u] == 0 ? sa : sb).push_back(u);
      Bits row = g.neighbours(Colour::Green, u);
      row &= mask;
      for (int v = row.first(); v >= 0; v = row.next(v))
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          qs.push_back(v);
        }
    }
    if (sa.size() < sb.size()) std::swap(sa, sb);
    sides.emplace_back(VertexSet::of(sa), VertexSet::of(sb));
  }
  std::sort(sides.begin(), sides.end(),
            [](const auto& a, const auto& b) {
              int da = a.first.size() - a.second.size();
              int db = b.first.size() - b.second.size();
              if (da != db) return da > db;
              return a.first.min() < b.first.min();
            });
  for (const auto& [big, small] : sides) {
    bool x_light = xs.size() <= ys.size();
    auto& big_target = x_light ? xs : ys;
    auto& small_target = x_light ? ys : xs;
    for (int v : big) big_target.push_back(v);
    for (int v : small) small_target.push_back(v);
  }
  for (int v : comps.isolated)
    (xs.size() <= ys.size() ? xs : ys).push_back(v);
  if (xs.size() < ys.size()) std::swap(xs, ys);
  XYWDecomposition out;
  out.X = VertexSet::of(std::move(xs));
  out.Y = VertexSet::of(std::move(ys));
  out.W = VertexSet::of(std::move(ws));
  return out;
}

bool OddCoreDecomposition::green_ignored(int u, int v) const {
  for (auto [a, b] : discarded_green_edges)
    if ((a == u && b == v) || (a == v && b == u)) return true;
  return false;
}

Json OddCoreDecomposition::to_json() const {
  Json j;
  j["kind"] = "odd-core";
  j["M"] = vertex_set_to_json(M);
  j["N"] = vertex_set_to_json(N);
  j["P"] = vertex_set_to_json(P);
  j["Q"] = vertex_set_to_json(Q);
  j["matching"] = F.to_json();
  Json disc = Json::array();
  for (auto [u, v] : discarded_green_edges) disc.push_back(Json::array({u, v}));
  j["discarded_green_edges"] = std::move(disc);
  return j;
}

OddCoreDecomposition odd_core_decomposition(
    const ColouredGraph& g, const ConnectedMatchingCertificate& f) {
  if (f.matching.colour != Colour::Green)
    throw PreconditionError("core decomposition expects a green matching");
  if (f.empty()) throw PreconditionError("empty matching");

  // F must live inside a non-bipartite green component and be maximum there.
  auto comps = mono_components(g, Colour::Green);
  const ComponentInfo* host = nullptr;
  for (const auto& comp : comps.components)
    if (comp.vertices.contains(f.matching.edges.front().first)) {
      host = &comp;
      break;
    }
  if (!host) throw PreconditionError("matching not inside a green component");
  for (auto [u, v] : f.matching.edges)
    if (!host->vertices.contains(u) || !host->vertices.contains(v))
      throw PreconditionError("matching spans several green components");
  if (!host->odd)
    throw PreconditionError("host green component is bipartite");
  Matching maximum = max_matching(g, Colour::Green, &host->vertices);
  if (maximum.size() > f.matching.size()) {
    // Report one augmentation: an edge of the maximum matching disjoint
    // from V(F) exists whenever sizes differ by the exchange argument.
    VertexSet fv = f.matching.vertices();
    for (auto [u, v] : maximum.edges)
      if (!fv.contains(u) && !fv.contains(v))
        throw MatchingNotMaximal({u, v}, {-1, -1});
    throw MatchingNotMaximal({-1, -1}, {-1, -1});
  }

  OddCoreDecomposition out;
  out.F = f;
  VertexSet l = f.matching.vertices();
  Bits lmask = l.mask(g.size());

  // P = green-attached outside vertices, Q = the rest.
  std::vector<int> p, q;
  for (int v = 0; v < g.size(); ++v) {
    if (lmask.test(v)) continue;
    if (g.neighbours(Colour::Green, v).intersects(lmask))
      p.push_back(v);
    else
      q.push_back(v);
  }
  Bits pmask(g.size());
  for (int v : p) pmask.set(v);

  // Maximality forbids green edges inside P or from P to Q; if one exists it
  // is an augmentation of F.
  for (int u : p) {
    Bits row = g.neighbours(Colour::Green, u);
    Bits inside = row;
    inside &= pmask;
    int w = inside.first();
    if (w >= 0) throw MatchingNotMaximal({u, w}, {-1, -1});
    for (int v : q)
      if (row.test(v)) throw MatchingNotMaximal({u, v}, {-1, -1});
  }

  // Orient each F-edge: the endpoint with green P-neighbours goes to M.  If
  // both endpoints have them, maximality forces a single common neighbour;
  // one of the two edges to it is discarded.
  std::vector<int> ms, ns;
  int balance = 0;  // >0 means M currently larger
  for (auto [u, v] : f.matching.edges) {
    Bits pu = g.neighbours(Colour::Green, u);
    pu &= pmask;
    Bits pv = g.neighbours(Colour::Green, v);
    pv &= pmask;
    bool hu = pu.any(), hv = pv.any();
    if (hu && hv) {
      int cu = pu.first(), cv = pv.first();
      if (cu != cv || pu.count() > 1 || pv.count() > 1) {
        // two distinct attachment points exist; F was not maximal
        int p1 = cu, p2 = cv;
        if (p1 == p2) {
          if (pu.next(p1) >= 0)
            p1 = pu.next(p1);
          else
            p2 = pv.next(p2);
        }
        throw MatchingNotMaximal({u, p1}, {v, p2});
      }
      out.discarded_green_edges.emplace_back(v, cu);
      ms.push_back(u);
      ns.push_back(v);
      ++balance;
      continue;
    }
    if (hu) {
      ms.push_back(u);
      ns.push_back(v);
      ++balance;
    } else if (hv) {
      ms.push_back(v);
      ns.push_back(u);
      ++balance;
    } else {
      // Unconstrained; balance |M| and |N|, then index order.
      if (balance > 0) {
        ns.push_back(u);
        ms.push_back(v);
        --balance;
      } else {
        ms.push_back(u);
        ns.push_back(v);
        ++balance;
      }
    }
  }
  out.M = VertexSet::of(std::move(ms));
  out.N = VertexSet::of(std::move(ns));
  out.P = VertexSet::of(std::move(p));
  out.Q = VertexSet::of(std::move(q));
  return out;
}

Json PurificationResult::to_json() const {
  Json j;
  j["purified"] = purified;
  j["discarded_a"] = vertex_set_to_json(discarded_a);
  j["discarded_b"] = vertex_set_to_json(discarded_b);
  if (violation) j["violation"] = violation->to_json();
  return j;
}

namespace {

// Largest wrong-colour matching restricted to a single component of that
// colour (so the Violation payload is a genuine connected-matching); falls
// back to effective connectivity when the colour components split it.
std::optional<ConnectedMatchingCertificate> connected_violation(
    const ColouredGraph& g, Colour wrong, const VertexSet& a,
    const VertexSet& b, long threshold) {
  auto comps = mono_components(g, wrong);
  ConnectedMatchingCertificate best;
  best.matching.colour = wrong;
  for (const auto& comp : comps.components) {
    VertexSet ca;
    VertexSet cb;
    {
      std::vector<int> xa, xb;
      for (int v : comp.vertices) {
        if (a.contains(v)) xa.push_back(v);
        if (b.contains(v)) xb.push_back(v);
      }
      ca = VertexSet::of(std::move(xa));
      cb = VertexSet::of(std::move(xb));
    }
    if (ca.empty() || cb.empty()) continue;
    Matching m = max_bipartite_matching(g, wrong, ca, cb);
    if (m.size() > best.matching.size()) {
      Bits mask = comp.vertices.mask(g.size());
      best = certify_matching(g, m, ConnectivityMode::ColourComponent, &mask);
    }
  }
  if (best.vertex_count() > threshold) return best;

  // Effective connectivity: the whole wrong-colour cross matching inside one
  // ambient component.
  auto ambient = ambient_components(g);
  for (const auto& comp : ambient.components) {
    std::vector<int> xa, xb;
    for (int v : comp.vertices) {
      if (a.contains(v)) xa.push_back(v);
      if (b.contains(v)) xb.push_back(v);
    }
    if (xa.empty() || xb.empty()) continue;
    Matching m = max_bipartite_matching(g, wrong, VertexSet::of(xa),
                                        VertexSet::of(xb));
    if (m.vertex_count() > threshold) {
      Bits mask = comp.vertices.mask(g.size());
      return certify_matching(g, m, ConnectivityMode::EffectiveComponent,
                              &mask);
    }
  }
  return std::nullopt;
}

}  // namespace

PurificationResult purify_pair(const ColouredGraph& g, const VertexSet& a,
                               const VertexSet& b, Colour keep,
                               long threshold_vertices) {
  if (!a.disjoint_from(b))
    throw PreconditionError("purify_pair sides must be disjoint");
  PurificationResult out;
  for (Colour wrong : kColours) {
    if (wrong == keep) continue;
    if (auto v = connected_violation(g, wrong, a, b, threshold_vertices)) {
      out.purified = false;
      out.violation = std::move(*v);
      return out;
    }
  }
  // No violation: drop a minimum vertex cover of the union of wrong-coloured
  // cross edges (Konig), leaving the cross graph keep-only.
  std::vector<int> av(a.begin(), a.end());
  // A synthetic bipartite instance over all wrong cross edges.
  Bits bmask = b.mask(g.size());
  std::vector<EdgeSpec> wrong_edges;
  for (int u : a) {
    Bits row(g.size());
    for (Colour wrong : kColours) {
      if (wrong == keep) continue;
      Bits r = g.neighbours(wrong, u);
      r &= bmask;
      row |= r;
    }
    for (int v = row.first(); v >= 0; v = row.next(v))
      wrong_edges.push_back({u, v, ColourSet::of(Colour::Red)});
  }
  ColouredGraph wg = ColouredGraph::build(g.size(), wrong_edges);
  auto cover = max_bipartite_matching_with_cover(wg, Colour::Red, a, b);
  out.purified = true;
  out.discarded_a = cover.cover_a;
  out.discarded_b = cover.cover_b;
  return out;
}

PurificationResult purify_inside(const ColouredGraph& g, const VertexSet& a,
                                 Colour keep, long threshold_vertices) {
  PurificationResult out;
  std::vector<int> discards;
  VertexSet remaining = a;
  for (Colour wrong : kColours) {
    if (wrong == keep) continue;
    Matching m = max_matching(g, wrong, &remaining);
    if (m.vertex_count() > threshold_vertices) {
      // A maximum matching inside one set need not be connected; certify it
      // within its colour component when possible, else effectively.
      auto comps = mono_components(g, wrong);
      ConnectedMatchingCertificate best;
      best.matching.colour = wrong;
      for (const auto& comp : comps.components) {
        std::vector<int> inside;
        for (int v : comp.vertices)
          if (remaining.contains(v)) inside.push_back(v);
        if (inside.size() < 2) continue;
        VertexSet scope = VertexSet::of(std::move(inside));
        Matching mm = max_matching(g, wrong, &scope);
        if (mm.size() > best.matching.size()) {
          Bits mask = comp.vertices.mask(g.size());
          best =
              certify_matching(g, mm, ConnectivityMode::ColourComponent, &mask);
        }
      }
      if (best.vertex_count() > threshold_vertices) {
        out.violation = std::move(best);
        out.purified = false;
        return out;
      }
      auto ambient = ambient_components(g);
      for (const auto& comp : ambient.components) {
        std::vector<int> inside;
        for (int v : comp.vertices)
          if (remaining.contains(v)) inside.push_back(v);
        VertexSet scope = VertexSet::of(std::move(inside));
        Matching mm = max_matching(g, wrong, &scope);
        if (mm.vertex_count() > threshold_vertices) {
          Bits mask = comp.vertices.mask(g.size());
          out.violation = certify_matching(
              g, mm, ConnectivityMode::EffectiveComponent, &mask);
          out.purified = false;
          return out;
        }
      }
    }
    // Matched vertices of a maximum matching cover every wrong edge.
    std::vector<int> drop;
    for (auto [u, v] : m.edges) {
      drop.push_back(u);
      drop.push_back(v);
      discards.push_back(u);
      discards.push_back(v);
    }
    remaining = remaining.minus(VertexSet::of(std::move(drop)));
  }
  out.purified = true;
  out.discarded_a = VertexSet::of(std::move(discards));
  return out;
}

namespace verify {

std::vector<std::string> parity_decomposition_violations(
    const ColouredGraph& g, const ParityDecomposition& d, int m) {
  std::vector<std::string> out;
  Bits vp = d.bipartite_part.mask(g.size());
  Bits vpp = d.odd_part.mask(g.size());
  if (d.bipartite_part.size() + d.odd_part.size() != g.size() ||
      !d.bipartite_part.disjoint_from(d.odd_part))
    out.push_back("V' and V'' must partition the vertices");
  // (iv) no green edges across
  for (const auto& [u, v, cs] : g.edges())
    if (cs.has(Colour::Green) &&
        ((vp.test(u) && vpp.test(v)) || (vpp.test(u) && vp.test(v)))) {
      out.push_back("green edge between V' and V''");
      break;
    }
  // (i) green graph on V' bipartite, witnessed by the stored bipartitions
  Bits seen(g.size());
  for (const auto& [sa, sb] : d.bipartitions) {
    if (!sa.disjoint_from(sb)) out.push_back("bipartition sides overlap");
    for (const auto& side : {sa, sb}) {
      Bits sm = side.mask(g.size());
      for (int u : side) {
        if (!vp.test(u)) out.push_back("bipartition vertex outside V'");
        if (seen.test(u)) out.push_back("vertex in two bipartitions");
        seen.set(u);
        Bits row = g.neighbours(Colour::Green, u);
        if (row.intersects(sm)) {
          out.push_back("green edge inside a bipartition side");
          break;
        }
      }
    }
  }
  for (int v : d.bipartite_part)
    if (!seen.test(v) && g.neighbours(Colour::Green, v).intersects(vp))
      out.push_back("green-adjacent V' vertex missing from bipartitions");
  // (ii) every green component inside V'' is odd
  auto comps = mono_components(g, Colour::Green, &vpp);
  for (const auto& comp : comps.components)
    if (!comp.odd) {
      out.push_back("even green component inside V''");
      break;
    }
  // (iii) the Erdos-Gallai edge bound on the odd part
  int inner = 0;
  for (const auto& [u, v, cs] : g.edges())
    if (cs.has(Colour::Green) && vpp.test(u) && vpp.test(v)) ++inner;
  if (2L * inner > static_cast<long>(m) * d.odd_part.size())
    out.push_back("odd part has more than m|V''|/2 green edges");
  return out;
}

std::vector<std::string> xyw_violations(const ColouredGraph& g,
                                        const XYWDecomposition& d) {
  std::vector<std::string> out;
  if (d.X.size() + d.Y.size() + d.W.size() != g.size())
    out.push_back("X, Y, W must cover the vertices");
  if (!d.X.disjoint_from(d.Y) || !d.X.disjoint_from(d.W) ||
      !d.Y.disjoint_from(d.W))
    out.push_back("X, Y, W must be disjoint");
  if (d.X.size() < d.Y.size()) out.push_back("|X| >= |Y| fails");
  Bits mx = d.X.mask(g.size());
  Bits my = d.Y.mask(g.size());
  Bits mw = d.W.mask(g.size());
  Bits mxy = mx;
  mxy |= my;
  for (const auto& [u, v, cs] : g.edges()) {
    if (!cs.has(Colour::Green)) continue;
    if (mx.test(u) && mx.test(v)) out.push_back("green edge inside X");
    if (my.test(u) && my.test(v)) out.push_back("green edge inside Y");
    if ((mxy.test(u) && mw.test(v)) || (mw.test(u) && mxy.test(v)))
      out.push_back("green edge between X u Y and W");
  }
  return out;
}

std::vector<std::string> odd_core_violations(const ColouredGraph& g,
                                             const OddCoreDecomposition& d) {
  std::vector<std::string> out;
  VertexSet l = d.M.unite(d.N);
  if (!(l == d.F.matching.vertices()))
    out.push_back("(E1) M u N differs from V(F)");
  for (auto [u, v] : d.F.matching.edges) {
    bool cross = (d.M.contains(u) && d.N.contains(v)) ||
                 (d.N.contains(u) && d.M.contains(v));
    if (!cross) {
      out.push_back("(E1) matching edge not between M and N");
      break;
    }
  }
  Bits mm = d.M.mask(g.size());
  for (int v : d.P) {
    Bits row = g.neighbours(Colour::Green, v);
    row &= mm;
    bool attached = false;
    for (int u = row.first(); u >= 0; u = row.next(u))
      if (!d.green_ignored(u, v)) {
        attached = true;
        break;
      }
    if (!attached) {
      out.push_back("(E2) P vertex without a live green edge to M");
      break;
    }
  }
  auto no_green = [&](const VertexSet& xs, const VertexSet& ys,
                      const char* what) {
    Bits ym = ys.mask(g.size());
    for (int u : xs) {
      Bits row = g.neighbours(Colour::Green, u);
      row &= ym;
      for (int v = row.first(); v >= 0; v = row.next(v))
        if (!d.green_ignored(u, v)) {
          out.push_back(std::string("(E3) green edge in ") + what);
          return;
        }
    }
  };
  no_green(d.N, d.P, "G[N,P]");
  no_green(d.M, d.Q, "G[M,Q]");
  no_green(d.N, d.Q, "G[N,Q]");
  no_green(d.P, d.Q, "G[P,Q]");
  {
    Bits pm = d.P.mask(g.size());
    for (int u : d.P) {
      Bits row = g.neighbours(Colour::Green, u);
      row &= pm;
      for (int v = row.first(); v >= 0; v = row.next(v))
        if (v > u && !d.green_ignored(u, v)) {
          out.push_back("(E3) green edge inside P");
          break;
        }
    }
  }
  // coverage
  if (d.M.size() + d.N.size() + d.P.size() + d.Q.size() != g.size())
    out.push_back("M, N, P, Q must partition the vertices");
  return out;
}

}  // namespace verify

}  // namespace ramsey
