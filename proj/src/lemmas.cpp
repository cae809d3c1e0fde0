#include "ramsey/lemmas.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

namespace ramsey {

namespace {

void push_slack(LemmaOutcome& o, const std::string& name, const Alg& required,
                long achieved, bool ok) {
  o.slack.push_back({name, required.str(), std::to_string(achieved), ok});
}

ConnectedMatchingCertificate best_matching_of(const ColouredGraph& g,
                                              Colour c) {
  return largest_connected_matching(g, c);
}

}  // namespace

Json LemmaOutcome::to_json() const {
  Json j;
  j["lemma"] = lemma;
  j["tag"] = tag;
  j["verified"] = verified;
  if (certificate) j["certificate"] = certificate->to_json();
  Json parts_json = Json::object();
  for (const auto& [name, vs] : parts) parts_json[name] = vertex_set_to_json(vs);
  j["parts"] = std::move(parts_json);
  Json slack_json = Json::array();
  for (const auto& s : slack)
    slack_json.push_back(
        {{"name", s.name}, {"required", s.required}, {"achieved", s.achieved},
         {"ok", s.ok}});
  j["slack"] = std::move(slack_json);
  return j;
}

Alg sqrt_term(const Rational& coeff, const Rational& eta, long k) {
  return Alg::rooted(rat(0), coeff * k, eta, 2);
}

bool graph_is_two_coloured(const ColouredGraph& g) {
  return g.edge_count(Colour::Green) == 0;
}

bool is_fraction_complete(const ColouredGraph& g, const Rational& c) {
  int k = g.size();
  if (k <= 1) return true;
  Rational need = (Rational(1) - c) * (k - 1);
  for (int v = 0; v < k; ++v)
    if (Rational(g.degree_any(v)) < need) return false;
  return true;
}

bool is_almost_complete(const ColouredGraph& g, const Rational& a) {
  int k = g.size();
  if (k <= 1) return true;
  Rational need = Rational(k - 1) - a;
  for (int v = 0; v < k; ++v)
    if (Rational(g.degree_any(v)) < need) return false;
  return true;
}

bool is_almost_complete_outside_hole(const ColouredGraph& g,
                                     const VertexSet& hole,
                                     const Rational& a) {
  int k = g.size();
  if (k <= 1) return true;
  for (int v = 0; v < k; ++v) {
    Rational allowance = a;
    if (hole.contains(v)) allowance += hole.size() - 1;
    if (Rational(g.degree_any(v)) < Rational(k - 1) - allowance) return false;
  }
  return true;
}

ConnectedMatchingCertificate connected_matching_from_degree(
    const ColouredGraph& g, Colour colour, int m) {
  int k = g.size();
  if (m < 3 || m > k)
    throw PreconditionError("requires 3 <= m <= vertex count");
  // average degree = 2E/K >= m
  if (2L * g.edge_count(colour) < static_cast<long>(m) * k) {
    std::ostringstream os;
    os << "average degree " << 2.0 * g.edge_count(colour) / k << " below "
       << m;
    throw PreconditionError(os.str());
  }
  auto cert = largest_connected_matching(g, colour);
  if (cert.vertex_count() < m)
    throw Error("degree bound held but matching fell short; internal error");
  return cert;
}

// ---------------------------------------------------------------------------
// Largest component of two-coloured almost-complete graphs.

namespace {

struct MonoComponentPick {
  Colour colour = Colour::Red;
  VertexSet vertices;
};

// Largest monochromatic component over all colours; ties resolved by colour
// order then smallest vertex.
MonoComponentPick largest_mono_component(const ColouredGraph& g) {
  MonoComponentPick best;
  int best_size = -1;
  for (Colour c : kColours) {
    auto comps = mono_components(g, c);
    for (const auto& comp : comps.components) {
      if (comp.vertices.size() > best_size) {
        best_size = comp.vertices.size();
        best = {c, comp.vertices};
      }
    }
  }
  return best;
}

}  // namespace

LemmaOutcome largest_component_two_coloured(const ColouredGraph& g,
                                            const Rational& eta) {
  long k = g.size();
  if (!(eta > 0 && eta < rat(1, 3)))
    throw PreconditionError("requires 0 < eta < 1/3");
  if (Rational(k) * eta < 1)
    throw PreconditionError("requires K >= 1/eta");
  if (!graph_is_two_coloured(g))
    throw PreconditionError("graph must be two-coloured (no green edges)");
  if (!is_fraction_complete(g, eta))
    throw PreconditionError("graph is not (1-eta)-complete");

  LemmaOutcome out;
  out.lemma = "dgf0";
  auto pick = largest_mono_component(g);
  Rational bound = (Rational(1) - 3 * eta) * k;
  bool ok = Rational(pick.vertices.size()) >= bound;
  out.tag = ok ? "i" : "counterexample";
  out.parts.emplace_back("F", pick.vertices);
  out.parts.emplace_back(std::string("F_colour_") + name(pick.colour),
                         pick.vertices);
  push_slack(out, "|F| >= (1-3eta)K", Alg(bound), pick.vertices.size(), ok);
  out.verified = ok && verify::is_mono_component(g, pick.colour, pick.vertices);
  return out;
}

LemmaOutcome one_hole_analysis(const ColouredGraph& g, const VertexSet& w,
                               const Rational& eta) {
  long k = g.size();
  if (!(eta > 0 && eta < rat(1, 20)))
    throw PreconditionError("requires 0 < eta < 1/20");
  if (Rational(k) * eta < 1)
    throw PreconditionError("requires K >= 1/eta");
  if (!graph_is_two_coloured(g))
    throw PreconditionError("graph must be two-coloured");
  Alg min_side = sqrt_term(rat(4), eta, k);
  if (min_side.gt(rat(w.size())) ||
      min_side.gt(rat(k - w.size())))
    throw PreconditionError("|W| and |V\\W| must be >= 4 sqrt(eta) K");
  for (int u : w) {
    Bits row = g.neighbours_any(u);
    for (int v : w)
      if (v > u && row.test(v))
        throw PreconditionError("edges inside W are not allowed");
  }
  if (!is_almost_complete_outside_hole(g, w, eta * (k - 1)))
    throw PreconditionError("ambient (1-eta)-completeness fails");

  LemmaOutcome out;
  out.lemma = "dgf1";
  auto pick = largest_mono_component(g);
  // (1 - 2 sqrt(eta)) K  ==  K - 2 sqrt(eta) K
  Alg bound = Alg::rooted(rat(k), rat(-2) * k, eta, 2);

  // Star centres: w in W with red (blue) edges to all but at most
  // 3 sqrt(eta) K vertices outside W.  Reported for both outcomes so
  // membership stays checkable by degree count.
  Alg misses_allowed = sqrt_term(rat(3), eta, k);
  Bits outside = VertexSet::range(0, g.size()).minus(w).mask(g.size());
  int outside_n = k - w.size();
  std::vector<int> wr, wb;
  for (int u : w) {
    int red = g.neighbours(Colour::Red, u).count_and(outside);
    int blue = g.neighbours(Colour::Blue, u).count_and(outside);
    if (misses_allowed.geq(rat(outside_n - red))) wr.push_back(u);
    if (misses_allowed.geq(rat(outside_n - blue))) wb.push_back(u);
  }
  out.parts.emplace_back("W_r", VertexSet::of(wr));
  out.parts.emplace_back("W_b", VertexSet::of(wb));

  if (bound.leq(rat(pick.vertices.size()))) {
    out.tag = "i";
    out.parts.emplace_back("F", pick.vertices);
    push_slack(out, "|F| >= (1-2sqrt(eta))K", bound, pick.vertices.size(),
               true);
    out.verified = verify::is_mono_component(g, pick.colour, pick.vertices);
    return out;
  }
  if (!wr.empty() && !wb.empty()) {
    out.tag = "ii";
    out.verified = true;
    return out;
  }
  out.tag = "counterexample";
  push_slack(out, "|F| >= (1-2sqrt(eta))K", bound, pick.vertices.size(),
             false);
  return out;
}

// ---------------------------------------------------------------------------
// Two holes: the bipartite case ladder.

namespace {

// Groups `side` by the colour components of g and tries to split the groups
// into two parts of size >= lower each.  Deterministic: larger groups first,
// placed on the lighter part.
std::optional<std::pair<VertexSet, VertexSet>> split_side_by_components(
    const ColouredGraph& g, Colour colour, const VertexSet& side,
    const Alg& lower) {
  auto comps = mono_components(g, colour);
  std::vector<int> group_of(g.size(), -1);
  for (size_t i = 0; i < comps.components.size(); ++i)
    for (int v : comps.components[i].vertices) group_of[v] = int(i);
  std::map<int, std::vector<int>> groups;
  int next_single = static_cast<int>(comps.components.size());
  for (int v : side) {
    int gid = group_of[v] >= 0 ? group_of[v] : next_single++;
    groups[gid].push_back(v);
  }
  if (groups.size() < 2) return std::nullopt;
  std::vector<std::vector<int>> gs;
  for (auto& [id, vs] : groups) gs.push_back(std::move(vs));
  std::sort(gs.begin(), gs.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  std::vector<int> s1, s2;
  for (auto& grp : gs) {
    auto& target = s1.size() <= s2.size() ? s1 : s2;
    target.insert(target.end(), grp.begin(), grp.end());
  }
  // Also try the "largest group alone" split if the greedy one is lopsided.
  auto ok = [&](const std::vector<int>& a, const std::vector<int>& b) {
    return lower.leq(rat(long(a.size()))) && lower.leq(rat(long(b.size())));
  };
  if (ok(s1, s2))
    return std::make_pair(VertexSet::of(s1), VertexSet::of(s2));
  std::vector<int> first = gs.front();
  std::vector<int> rest;
  for (size_t i = 1; i < gs.size(); ++i)
    rest.insert(rest.end(), gs[i].begin(), gs[i].end());
  if (ok(first, rest))
    return std::make_pair(VertexSet::of(first), VertexSet::of(rest));
  return std::nullopt;
}

bool block_exclusively(const ColouredGraph& g, const VertexSet& x,
                       const VertexSet& y, Colour only) {
  Bits ymask = y.mask(g.size());
  for (int u : x)
    for (Colour c : kColours)
      if (c != only && g.neighbours(c, u).intersects(ymask)) return false;
  return true;
}

}  // namespace

LemmaOutcome two_holes_analysis(const ColouredGraph& g, const VertexSet& a,
                                const VertexSet& b, const Rational& eta) {
  long k = g.size();
  if (!(eta > 0 && eta < rat(1, 10)))
    throw PreconditionError("requires 0 < eta < 0.1");
  if (Rational(k) * eta < 2)
    throw PreconditionError("requires K >= 2/eta");
  if (!a.disjoint_from(b) || a.size() + b.size() != k)
    throw PreconditionError("A and B must partition the vertex set");
  Rational six = 6 * eta * k;
  if (Rational(a.size()) < six || Rational(b.size()) < six)
    throw PreconditionError("|A|, |B| must be >= 6 eta K");
  if (!graph_is_two_coloured(g))
    throw PreconditionError("graph must be two-multicoloured");
  for (const auto& side : {a, b}) {
    Bits mask = side.mask(g.size());
    for (int u : side) {
      Bits row = g.neighbours_any(u);
      row &= mask;
      if (row.any())
        throw PreconditionError("edges inside A or B are not allowed");
    }
  }
  {
    // (1-eta)-complete before the two holes were cut.
    for (int u = 0; u < g.size(); ++u) {
      long own_side = a.contains(u) ? a.size() : b.size();
      Rational allowance = eta * (k - 1) + (own_side - 1);
      if (Rational(g.degree_any(u)) < Rational(k - 1) - allowance)
        throw PreconditionError("(1-eta)-completeness (pre-hole) fails");
    }
  }

  LemmaOutcome out;
  out.lemma = "twoholes";

  auto pick = largest_mono_component(g);
  Rational bound_i = (Rational(1) - 7 * eta) * k;
  if (Rational(pick.vertices.size()) >= bound_i) {
    out.tag = "i";
    out.parts.emplace_back("F", pick.vertices);
    push_slack(out, "|F| >= (1-7eta)K", Alg(bound_i), pick.vertices.size(),
               true);
    out.verified = verify::is_mono_component(g, pick.colour, pick.vertices);
    return out;
  }

  // Case (ii): replay the proof.  Split one side by the components of one
  // colour, derive the other side's split, then check the cross colouring.
  Alg three = Alg(3 * eta * k);
  struct Attempt {
    Colour colour;
    bool split_a;
  };
  const Attempt attempts[] = {{Colour::Red, true},
                              {Colour::Red, false},
                              {Colour::Blue, true},
                              {Colour::Blue, false}};
  for (const auto& at : attempts) {
    const VertexSet& split_side = at.split_a ? a : b;
    const VertexSet& other_side = at.split_a ? b : a;
    auto split = split_side_by_components(g, at.colour, split_side, three);
    if (!split) continue;
    auto [s1, s2] = *split;
    // other-side vertices with a `colour` edge into s1 cannot also reach s2.
    Bits m1 = s1.mask(g.size());
    std::vector<int> o2, o1;
    for (int v : other_side) {
      if (g.neighbours(at.colour, v).intersects(m1))
        o2.push_back(v);
      else
        o1.push_back(v);
    }
    VertexSet t1 = VertexSet::of(o1), t2 = VertexSet::of(o2);
    if (three.gt(rat(t1.size())) || three.gt(rat(t2.size()))) continue;
    // Relabel to the lemma's pattern: edges red inside (A_i, B_i), blue
    // across.  After a red split of A: [s1,t2] and [s2,t1] are the red
    // blocks; after a blue split they are the blue blocks.
    VertexSet a1, a2, b1, b2;
    if (at.colour == Colour::Red) {
      a1 = s1;
      a2 = s2;
      b1 = t2;
      b2 = t1;
    } else {
      a1 = s1;
      a2 = s2;
      b1 = t1;
      b2 = t2;
    }
    if (!at.split_a) {
      std::swap(a1, b1);
      std::swap(a2, b2);
    }
    if (block_exclusively(g, a1, b1, Colour::Red) &&
        block_exclusively(g, a2, b2, Colour::Red) &&
        block_exclusively(g, a1, b2, Colour::Blue) &&
        block_exclusively(g, a2, b1, Colour::Blue)) {
      out.tag = "ii";
      out.parts.emplace_back("A1", a1);
      out.parts.emplace_back("A2", a2);
      out.parts.emplace_back("B1", b1);
      out.parts.emplace_back("B2", b2);
      out.verified = true;
      return out;
    }
  }

  // Cases (iii)/(iv): star centres by degree count.
  Rational star_misses = 4 * eta * k;
  auto stars = [&](const VertexSet& from, const VertexSet& to, Colour c) {
    Bits tm = to.mask(g.size());
    std::vector<int> hits;
    for (int u : from) {
      int d = g.neighbours(c, u).count_and(tm);
      if (Rational(to.size() - d) <= star_misses) hits.push_back(u);
    }
    return VertexSet::of(hits);
  };
  VertexSet ar = stars(a, b, Colour::Red), ab = stars(a, b, Colour::Blue);
  if (!ar.empty() && !ab.empty()) {
    out.tag = "iii";
    out.parts.emplace_back("A_r", ar);
    out.parts.emplace_back("A_b", ab);
    out.verified = true;
    return out;
  }
  VertexSet br = stars(b, a, Colour::Red), bb = stars(b, a, Colour::Blue);
  if (!br.empty() && !bb.empty()) {
    out.tag = "iv";
    out.parts.emplace_back("B_r", br);
    out.parts.emplace_back("B_b", bb);
    out.verified = true;
    return out;
  }

  out.tag = "counterexample";
  push_slack(out, "|F| >= (1-7eta)K", Alg(bound_i), pick.vertices.size(),
             false);
  return out;
}

// ---------------------------------------------------------------------------

ConnectedMatchingCertificate dense_bipartite_matching(const ColouredGraph& g,
                                                      Colour colour,
                                                      const VertexSet& a,
                                                      const VertexSet& b,
                                                      const Rational& eps) {
  if (a.size() < b.size())
    throw PreconditionError("requires |A| >= |B|");
  // inclusive right boundary so the eps = 1/100 acceptance point is usable
  if (!(eps > 0 && eps <= rat(1, 100)))
    throw PreconditionError("requires 0 < eps <= 0.01");
  if (!a.disjoint_from(b)) throw PreconditionError("sides overlap");
  Bits bm = b.mask(g.size());
  long cross = 0;
  for (int u : a) cross += g.neighbours(colour, u).count_and(bm);
  Rational density_need = (Rational(1) - eps) * a.size() * b.size();
  if (Rational(cross) < density_need) {
    std::ostringstream os;
    os << "cross edge count " << cross << " below (1-eps)|A||B| = "
       << rat_str(density_need);
    throw PreconditionError(os.str());
  }

  // Bipartite components over cross edges only, then an exact matching in
  // each; the lemma's bound must be met by the best of them.
  Bits am = a.mask(g.size());
  Bits seen(g.size());
  ConnectedMatchingCertificate best;
  best.matching.colour = colour;
  best.tree_parent.assign(g.size(), -1);
  for (int s : a) {
    if (seen.test(s)) continue;
    std::vector<int> queue{s};
    seen.set(s);
    size_t qi = 0;
    std::vector<int> in_a{s}, in_b;
    while (qi < queue.size()) {
      int u = queue[qi++];
      Bits row = g.neighbours(colour, u);
      row &= (am.test(u) ? bm : am);
      for (int v = row.first(); v >= 0; v = row.next(v))
        if (!seen.test(v)) {
          seen.set(v);
          queue.push_back(v);
          (am.test(v) ? in_a : in_b).push_back(v);
        }
    }
    if (in_b.empty()) continue;
    auto m = max_bipartite_matching(g, colour, VertexSet::of(in_a),
                                    VertexSet::of(in_b));
    if (m.size() > best.matching.size()) {
      best.matching = m;
      // tree over the cross subgraph of this component
      ConnectedMatchingCertificate cert;
      cert.matching = best.matching;
      cert.tree_parent.assign(g.size(), -1);
      cert.tree_root = s;
      std::vector<char> vis(g.size(), 0);
      vis[s] = 1;
      std::vector<int> q2{s};
      size_t j = 0;
      while (j < q2.size()) {
        int u = q2[j++];
        Bits row = g.neighbours(colour, u);
        row &= (am.test(u) ? bm : am);
        for (int v = row.first(); v >= 0; v = row.next(v))
          if (!vis[v]) {
            vis[v] = 1;
            cert.tree_parent[v] = u;
            q2.push_back(v);
          }
      }
      cert.component = VertexSet::of(std::move(q2));
      best = std::move(cert);
    }
  }
  Rational need_vertices = 2 * (Rational(1) - 3 * eps) * b.size();
  if (Rational(best.vertex_count()) < need_vertices)
    throw Error("density bound held but matching fell short; internal error");
  return best;
}

// ---------------------------------------------------------------------------
// Matching-or-structure detector for two-coloured graphs.

namespace {

struct PartitionCheck {
  bool ok = true;
  std::vector<std::string> why;
  void require(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      why.push_back(msg);
    }
  }
};

// Conditions (a)-(c) with major/minor colours; major is red for case (iii).
PartitionCheck check_skb_partition(const ColouredGraph& g, const VertexSet& vp,
                                   const VertexSet& vpp, const VertexSet& w,
                                   Colour major, Colour minor,
                                   const Rational& alpha, const Rational& beta,
                                   const Rational& eta, long k) {
  PartitionCheck out;
  Alg size_vp = Alg::rooted(alpha * k, alpha * k, eta, 2);
  out.require(size_vp.gt(rat(vp.size())), "|V'| < (1+sqrt(eta)) alpha k");
  Alg size_vpp = Alg::rooted(beta * k / 2, beta * k / 2, eta, 2);
  out.require(size_vpp.geq(rat(vpp.size())),
              "|V''| <= (1+sqrt(eta)) beta k / 2");
  Alg size_w = Alg::rooted(rat(0), rat(k), eta, 16);
  out.require(size_w.geq(rat(w.size())), "|W| <= eta^(1/16) k");

  long np = vp.size();
  Bits mp = vp.mask(g.size());
  Bits mpp = vpp.mask(g.size());
  for (int u : vp) {
    long dmaj = g.neighbours(major, u).count_and(mp);
    long dmin = g.neighbours(minor, u).count_and(mp);
    if (np > 1) {
      // major inside V' is (1 - eta^(1/16))-complete
      Alg need = (Alg::rooted(rat(np - 1), rat(-(np - 1)), eta, 16));
      out.require(need.leq(rat(dmaj)), "major subgraph on V' completeness");
      Alg cap = Alg::rooted(rat(0), rat(np - 1), eta, 16);
      out.require(cap.geq(rat(dmin)), "minor subgraph on V' sparseness");
    }
    if (!vpp.empty()) {
      long cmin = g.neighbours(minor, u).count_and(mpp);
      long cmaj = g.neighbours(major, u).count_and(mpp);
      Alg need = Alg::rooted(rat(long(vpp.size())), rat(-long(vpp.size())),
                             eta, 16);
      out.require(need.leq(rat(cmin)), "minor cross completeness (V' side)");
      Alg cap = Alg::rooted(rat(0), rat(long(vpp.size())), eta, 16);
      out.require(cap.geq(rat(cmaj)), "major cross sparseness (V' side)");
    }
  }
  for (int u : vpp) {
    if (vp.empty()) break;
    long cmin = g.neighbours(minor, u).count_and(mp);
    long cmaj = g.neighbours(major, u).count_and(mp);
    Alg need = Alg::rooted(rat(np), rat(-np), eta, 16);
    out.require(need.leq(rat(cmin)), "minor cross completeness (V'' side)");
    Alg cap = Alg::rooted(rat(0), rat(np), eta, 16);
    out.require(cap.geq(rat(cmaj)), "major cross sparseness (V'' side)");
  }
  return out;
}

}  // namespace

LemmaOutcome red_blue_structure_detector(const ColouredGraph& g,
                                         const Rational& alpha,
                                         const Rational& beta,
                                         const Rational& eta, long k,
                                         const SkbOptions& opt) {
  long K = g.size();
  if (!(eta > 0 && eta < opt.eta_ceiling))
    throw PreconditionError("eta outside configured ceiling");
  if (!graph_is_two_coloured(g))
    throw PreconditionError("graph must be two-multicoloured");
  if (!(alpha >= beta && beta > 0))
    throw PreconditionError("requires alpha >= beta > 0");
  // beta >= 100 sqrt(eta) alpha, relaxed by the configured slack
  if (sqrt_term(100 * alpha, eta, 1).gt(beta * opt.precondition_slack))
    throw PreconditionError("requires beta >= 100 sqrt(eta) alpha");
  // K > (alpha + beta/2 - sqrt(eta) beta) k
  Alg kmin = Alg::rooted((alpha + beta / 2) * k, -beta * k, eta, 2);
  if (!kmin.lt(rat(K)))
    throw PreconditionError("K too small for the detector");
  if (!is_almost_complete(g, beta * pow_rat(eta, 2) * k))
    throw PreconditionError("graph not beta eta^2 k-almost-complete");

  LemmaOutcome out;
  out.lemma = "skb";

  Alg red_need = Alg::rooted(alpha * k, alpha * k, eta, 2);  // (1+sqrt(eta))ak
  auto red = best_matching_of(g, Colour::Red);
  if (red_need.leq(rat(red.vertex_count()))) {
    // Furthermore-clause: when alpha + beta/2 >= 2(1+sqrt(eta)) beta the
    // matching can be asked to be odd; report odd when we can certify it.
    bool want_odd =
        Alg::rooted(2 * beta, 2 * beta, eta, 2).leq(alpha + beta / 2);
    if (want_odd) {
      auto odd = largest_odd_connected_matching(g, Colour::Red);
      if (red_need.leq(rat(odd.vertex_count()))) {
        out.tag = "i_odd";
        out.certificate = odd;
        out.verified = verify::certificate_ok(g, odd);
        push_slack(out, "red odd matching", red_need, odd.vertex_count(),
                   true);
        return out;
      }
      out.slack.push_back({"furthermore clause", "odd matching", "not found",
                           false});
    }
    out.tag = "i";
    out.certificate = red;
    out.verified = verify::certificate_ok(g, red);
    push_slack(out, "red matching", red_need, red.vertex_count(), true);
    return out;
  }
  Alg blue_need = Alg::rooted(beta * k, beta * k, eta, 2);
  auto blue = best_matching_of(g, Colour::Blue);
  if (blue_need.leq(rat(blue.vertex_count()))) {
    out.tag = "ii";
    out.certificate = blue;
    out.verified = verify::certificate_ok(g, blue);
    push_slack(out, "blue matching", blue_need, blue.vertex_count(), true);
    return out;
  }

  // Structured partitions: seed V' with colour-heavy vertices, then move
  // pointwise violators out, and verify the final assignment exactly.
  auto attempt = [&](Colour major, Colour minor, const Rational& maj_scale,
                     const Rational& min_scale) -> std::optional<
      std::array<VertexSet, 3>> {
    std::vector<int> part(g.size(), 1);  // 0 = V', 1 = V'', 2 = W
    for (int v = 0; v < g.size(); ++v)
      if (g.degree(major, v) >= g.degree(minor, v)) part[v] = 0;
    for (int round = 0; round < opt.repair_rounds; ++round) {
      std::vector<int> vp, vpp, w;
      for (int v = 0; v < g.size(); ++v)
        (part[v] == 0 ? vp : part[v] == 1 ? vpp : w).push_back(v);
      auto VP = VertexSet::of(vp), VPP = VertexSet::of(vpp), W = VertexSet::of(w);
      auto chk = check_skb_partition(g, VP, VPP, W, major, minor, maj_scale,
                                     min_scale, eta, k);
      if (chk.ok) return std::array<VertexSet, 3>{VP, VPP, W};
      // Move the worst pointwise violator: recompute per-vertex misfit.
      Bits mp = VP.mask(g.size());
      Bits mpp = VPP.mask(g.size());
      int worst = -1;
      long worst_score = -1;
      for (int v = 0; v < g.size(); ++v) {
        if (part[v] == 2) continue;
        long score;
        if (part[v] == 0) {
          score = g.neighbours(minor, v).count_and(mp) +
                  g.neighbours(major, v).count_and(mpp) +
                  (VP.size() - 1 - g.neighbours(major, v).count_and(mp)) +
                  (VPP.size() - g.neighbours(minor, v).count_and(mpp));
        } else {
          score = g.neighbours(major, v).count_and(mp) +
                  (VP.size() - g.neighbours(minor, v).count_and(mp));
        }
        if (score > worst_score) {
          worst_score = score;
          worst = v;
        }
      }
      if (worst < 0) break;
      part[worst] = part[worst] == 0 ? 1 : (part[worst] == 1 ? 2 : 2);
    }
    return std::nullopt;
  };

  if (auto p = attempt(Colour::Red, Colour::Blue, alpha, beta)) {
    out.tag = "iii";
    out.parts.emplace_back("V_prime", (*p)[0]);
    out.parts.emplace_back("V_dprime", (*p)[1]);
    out.parts.emplace_back("W", (*p)[2]);
    out.verified = true;
    return out;
  }
  // Case (iv) needs beta > (1 - eta^(1/8)) alpha.
  Alg gate = Alg::rooted(alpha, -alpha, eta, 8);
  if (gate.lt(beta)) {
    if (auto p = attempt(Colour::Blue, Colour::Red, beta, alpha)) {
      out.tag = "iv";
      out.parts.emplace_back("V_prime", (*p)[0]);
      out.parts.emplace_back("V_dprime", (*p)[1]);
      out.parts.emplace_back("W", (*p)[2]);
      out.verified = true;
      return out;
    }
  }
  out.tag = "inconclusive";
  push_slack(out, "red matching", red_need, red.vertex_count(), false);
  push_slack(out, "blue matching", blue_need, blue.vertex_count(), false);
  return out;
}

LemmaOutcome balanced_two_colour_matching(const ColouredGraph& g,
                                          const Rational& eps, long k,
                                          const Rational& eps_ceiling) {
  long K = g.size();
  if (!(eps > 0 && eps < eps_ceiling))
    throw PreconditionError("eps outside configured ceiling");
  if (!graph_is_two_coloured(g))
    throw PreconditionError("graph must be two-multicoloured");
  if (!(Rational(K) > (Rational(1) - eps) * k))
    throw PreconditionError("requires K > (1-eps)k");
  if (!is_almost_complete(g, rat(27, 8) * pow_rat(eps, 4) * k))
    throw PreconditionError("graph not (27/8) eps^4 k-almost-complete");

  LemmaOutcome out;
  out.lemma = "skbe";
  Alg need = Alg::rooted(rat(2, 3) * k, rat(-7) * k, eps, 8);
  auto red = best_matching_of(g, Colour::Red);
  if (need.leq(rat(red.vertex_count()))) {
    out.tag = "i";
    out.certificate = red;
    out.verified = verify::certificate_ok(g, red);
    push_slack(out, "red matching", need, red.vertex_count(), true);
    return out;
  }
  auto blue = best_matching_of(g, Colour::Blue);
  if (need.leq(rat(blue.vertex_count()))) {
    out.tag = "ii";
    out.certificate = blue;
    out.verified = verify::certificate_ok(g, blue);
    push_slack(out, "blue matching", need, blue.vertex_count(), true);
    return out;
  }
  out.tag = "counterexample";
  push_slack(out, "red matching", need, red.vertex_count(), false);
  push_slack(out, "blue matching", need, blue.vertex_count(), false);
  return out;
}

LemmaOutcome three_colour_matching_check(const ColouredGraph& g,
                                         const Rational& a1,
                                         const Rational& a2,
                                         const Rational& a3,
                                         const Rational& eta, long k,
                                         const Rational& slack) {
  long K = g.size();
  Rational eta_cap = rat(2, 1000) *
                     std::min({a1 * a1, a2 * a2, a3 * a3}) * slack;
  if (!(eta > 0 && eta < eta_cap))
    throw PreconditionError("eta above 0.002 min(alpha_i^2) (with slack)");
  if (!is_fraction_complete(g, pow_rat(eta, 4)))
    throw PreconditionError("graph not (1-eta^4)-complete");
  Rational amax = std::max({Rational(a1), a2, a3});
  Alg kmin = Alg::rooted((a1 + a2 + a3 + amax) * k / 2, rat(9) * k, eta, 2);
  if (kmin.gt(rat(K)))
    throw PreconditionError("K below the lemma's size bound");

  LemmaOutcome out;
  out.lemma = "largew";
  const Rational alphas[3] = {a1, a2, a3};
  for (Colour c : kColours) {
    Rational need = (alphas[index(c)] + eta) * k;
    auto cert = best_matching_of(g, c);
    if (Rational(cert.vertex_count()) >= need) {
      out.tag = name(c);
      out.certificate = cert;
      out.verified = verify::certificate_ok(g, cert);
      push_slack(out, std::string(name(c)) + " matching", Alg(need),
                 cert.vertex_count(), true);
      return out;
    }
    push_slack(out, std::string(name(c)) + " matching", Alg(need),
               cert.vertex_count(), false);
  }
  out.tag = "counterexample";
  return out;
}

LemmaOutcome hole_tolerant_matching(const ColouredGraph& g, const VertexSet& w,
                                    const Rational& alpha,
                                    const Rational& beta, const Rational& v,
                                    const Rational& eta, long k,
                                    const Rational& slack) {
  long K = g.size();
  Rational eta_cap = rat(1, 100) * std::min(alpha, beta) * slack;
  if (!(eta > 0 && eta < eta_cap))
    throw PreconditionError("eta above 0.01 min(alpha, beta) (with slack)");
  if (!graph_is_two_coloured(g))
    throw PreconditionError("graph must be two-multicoloured");
  if (Rational(w.size()) > v * k)
    throw PreconditionError("|W| exceeds v k");
  {
    Bits mask = w.mask(g.size());
    for (int u : w) {
      Bits row = g.neighbours_any(u);
      row &= mask;
      if (row.any()) throw PreconditionError("edges inside W not allowed");
    }
  }
  if (!is_almost_complete_outside_hole(g, w, pow_rat(eta, 4) * (K - 1)))
    throw PreconditionError("(1-eta^4)-completeness (pre-hole) fails");
  Rational mx = std::max({Rational(2 * v), alpha, beta});
  Alg kmin = Alg::rooted((alpha + beta + mx) * k / 2, rat(3) * k, eta, 2);
  if (kmin.gt(rat(K)))
    throw PreconditionError("K below the lemma's size bound");

  LemmaOutcome out;
  out.lemma = "hole";
  Rational red_need = (alpha + eta) * k;
  auto red = best_matching_of(g, Colour::Red);
  if (Rational(red.vertex_count()) >= red_need) {
    out.tag = "red";
    out.certificate = red;
    out.verified = verify::certificate_ok(g, red);
    push_slack(out, "red matching", Alg(red_need), red.vertex_count(), true);
    return out;
  }
  Rational blue_need = (beta + eta) * k;
  auto blue = best_matching_of(g, Colour::Blue);
  if (Rational(blue.vertex_count()) >= blue_need) {
    out.tag = "blue";
    out.certificate = blue;
    out.verified = verify::certificate_ok(g, blue);
    push_slack(out, "blue matching", Alg(blue_need), blue.vertex_count(),
               true);
    return out;
  }
  out.tag = "counterexample";
  push_slack(out, "red matching", Alg(red_need), red.vertex_count(), false);
  push_slack(out, "blue matching", Alg(blue_need), blue.vertex_count(), false);
  return out;
}

// ---------------------------------------------------------------------------

namespace verify {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool is_mono_component(const ColouredGraph& g, Colour c, const VertexSet& vs) {
  if (vs.empty()) return false;
  UnionFind uf(g.size());
  for (const auto& [u, v, cs] : g.edges())
    if (cs.has(c)) uf.unite(u, v);
  int root = uf.find(vs.min());
  for (int v : vs)
    if (uf.find(v) != root) return false;
  // maximality: nothing outside vs shares the root
  for (int v = 0; v < g.size(); ++v)
    if (!vs.contains(v) && uf.find(v) == root) return false;
  return true;
}

int largest_mono_component_size(const ColouredGraph& g) {
  int best = 0;
  for (Colour c : kColours) {
    UnionFind uf(g.size());
    std::vector<int> size(g.size(), 0);
    std::vector<char> present(g.size(), 0);
    for (const auto& [u, v, cs] : g.edges())
      if (cs.has(c)) {
        uf.unite(u, v);
        present[u] = present[v] = 1;
      }
    std::vector<int> count(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
      if (present[v]) ++count[uf.find(v)];
    for (int v = 0; v < g.size(); ++v) best = std::max(best, count[v]);
  }
  return best;
}

bool lemma_outcome_ok(const ColouredGraph& g, const LemmaOutcome& o) {
  if (o.tag == "counterexample" || o.tag == "inconclusive") return false;
  if (o.certificate) {
    if (!certificate_ok(g, *o.certificate)) return false;
  }
  for (const auto& s : o.slack)
    if (!s.ok) return false;
  return true;
}

}  // namespace verify

}  // namespace ramsey
