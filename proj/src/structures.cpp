#include "ramsey/structures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace ramsey {

namespace {

std::string vj(int u, int v) {
  std::ostringstream os;
  os << "(" << u << "," << v << ")";
  return os.str();
}

void add_violation(ValidationReport& r, const std::string& clause,
                   const std::string& detail) {
  r.valid = false;
  r.violations.push_back({clause, detail});
}

void check_sizes_clause(ValidationReport& r, const char* label,
                        const VertexSet& part, const Alg& floor_value) {
  // The classes are defined for positive size parameters, so a part may
  // never be empty even when a desk-scale floor drops below one.
  if (part.empty()) {
    add_violation(r, "(i)", std::string("part ") + label + " is empty");
    return;
  }
  if (floor_value.gt(rat(part.size()))) {
    std::ostringstream os;
    os << "|" << label << "| = " << part.size() << " < " << floor_value.str();
    add_violation(r, "(i)", os.str());
  }
}

void require_disjoint(const std::vector<const VertexSet*>& parts) {
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t j = i + 1; j < parts.size(); ++j)
      if (!parts[i]->disjoint_from(*parts[j]))
        throw PreconditionError("structure parts must be disjoint");
}

// Every present edge between (or inside) the given sets must carry exactly
// {only}; multicoloured edges violate exclusivity.
void check_exclusive(ValidationReport& r, const ColouredGraph& g,
                     const VertexSet& a, const VertexSet& b, Colour only,
                     const std::string& where) {
  Bits bm = b.mask(g.size());
  for (int u : a) {
    Bits row = g.neighbours_any(u);
    row &= bm;
    for (int v = row.first(); v >= 0; v = row.next(v)) {
      if (&a == &b && v <= u) continue;
      if (!g.colours(u, v).only(only)) {
        add_violation(r, "(iii)",
                      "edge " + vj(u, v) + " in " + where +
                          " not exclusively " + name(only));
        return;
      }
    }
  }
}

void check_almost_complete(ValidationReport& r, const ColouredGraph& g,
                           const VertexSet& span, const Alg& c,
                           std::optional<std::pair<Colour, Colour>> filter) {
  Bits mask = span.mask(g.size());
  int n = span.size();
  for (int v : span) {
    int d;
    if (filter) {
      Bits row = g.neighbours(filter->first, v);
      Bits row2 = g.neighbours(filter->second, v);
      row |= row2;
      d = row.count_and(mask);
    } else {
      d = g.neighbours_any(v).count_and(mask);
    }
    if (c.lt(rat(n - 1 - d))) {
      std::ostringstream os;
      os << "vertex " << v << " misses " << (n - 1 - d)
         << " neighbours, budget " << c.str();
      add_violation(r, "(ii)", os.str());
      return;
    }
  }
}

// degree >= (1 - c2) * total  over the chosen colour.
bool complete_enough(const Alg& c2, long total, long degree) {
  Alg threshold = c2.negated() * rat(total) + rat(total);
  return threshold.leq(rat(degree));
}

// degree <= c2 * total.
bool sparse_enough(const Alg& c2, long total, long degree) {
  return (c2 * rat(total)).geq(rat(degree));
}

}  // namespace

Json alg_to_json(const Alg& a) {
  if (a.is_rational() && a.root() == 1 && a.scale() == 0)
    return rat_str(a.rational_part());
  Json j;
  j["r"] = rat_str(a.rational_part());
  j["s"] = rat_str(a.scale());
  j["x"] = rat_str(a.radicand());
  j["root"] = a.root();
  return j;
}

Alg alg_from_json(const Json& j) {
  if (j.is_string()) return Alg(rat_parse(j.get<std::string>()));
  if (j.is_number_integer()) return Alg(rat(j.get<long>()));
  return Alg::rooted(rat_parse(j.at("r").get<std::string>()),
                     rat_parse(j.at("s").get<std::string>()),
                     rat_parse(j.at("x").get<std::string>()),
                     j.at("root").get<int>());
}

Json ValidationReport::to_json() const {
  Json j;
  j["valid"] = valid;
  Json vs = Json::array();
  for (const auto& v : violations)
    vs.push_back({{"clause", v.clause}, {"detail", v.detail}});
  j["violations"] = std::move(vs);
  return j;
}

Json HStructure::to_json() const {
  Json j;
  j["class"] = "H";
  j["X1"] = vertex_set_to_json(X1);
  j["X2"] = vertex_set_to_json(X2);
  j["x1"] = alg_to_json(x1);
  j["x2"] = alg_to_json(x2);
  j["c1"] = alg_to_json(c1);
  j["c2"] = alg_to_json(c2);
  j["gamma1"] = name(gamma1);
  j["gamma2"] = name(gamma2);
  return j;
}

HStructure HStructure::from_json(const Json& j) {
  HStructure h;
  h.X1 = vertex_set_from_json(j.at("X1"));
  h.X2 = vertex_set_from_json(j.at("X2"));
  h.x1 = alg_from_json(j.at("x1"));
  h.x2 = alg_from_json(j.at("x2"));
  h.c1 = alg_from_json(j.at("c1"));
  h.c2 = alg_from_json(j.at("c2"));
  h.gamma1 = *colour_from_name(j.at("gamma1").get<std::string>());
  h.gamma2 = *colour_from_name(j.at("gamma2").get<std::string>());
  return h;
}

Json KStructure::to_json() const {
  Json j;
  j["class"] = "K";
  j["X1"] = vertex_set_to_json(X1);
  j["X2"] = vertex_set_to_json(X2);
  j["X3"] = vertex_set_to_json(X3);
  j["x1"] = alg_to_json(x1);
  j["x2"] = alg_to_json(x2);
  j["x3"] = alg_to_json(x3);
  j["c"] = alg_to_json(c);
  return j;
}

KStructure KStructure::from_json(const Json& j) {
  KStructure k;
  k.X1 = vertex_set_from_json(j.at("X1"));
  k.X2 = vertex_set_from_json(j.at("X2"));
  k.X3 = vertex_set_from_json(j.at("X3"));
  k.x1 = alg_from_json(j.at("x1"));
  k.x2 = alg_from_json(j.at("x2"));
  k.x3 = alg_from_json(j.at("x3"));
  k.c = alg_from_json(j.at("c"));
  return k;
}

Json KStarStructure::to_json() const {
  Json j;
  j["class"] = "K*";
  j["X1"] = vertex_set_to_json(X1);
  j["X2"] = vertex_set_to_json(X2);
  j["Y1"] = vertex_set_to_json(Y1);
  j["Y2"] = vertex_set_to_json(Y2);
  j["x1"] = alg_to_json(x1);
  j["x2"] = alg_to_json(x2);
  j["y1"] = alg_to_json(y1);
  j["y2"] = alg_to_json(y2);
  j["z"] = alg_to_json(z);
  j["c"] = alg_to_json(c);
  return j;
}

KStarStructure KStarStructure::from_json(const Json& j) {
  KStarStructure k;
  k.X1 = vertex_set_from_json(j.at("X1"));
  k.X2 = vertex_set_from_json(j.at("X2"));
  k.Y1 = vertex_set_from_json(j.at("Y1"));
  k.Y2 = vertex_set_from_json(j.at("Y2"));
  k.x1 = alg_from_json(j.at("x1"));
  k.x2 = alg_from_json(j.at("x2"));
  k.y1 = alg_from_json(j.at("y1"));
  k.y2 = alg_from_json(j.at("y2"));
  k.z = alg_from_json(j.at("z"));
  k.c = alg_from_json(j.at("c"));
  return k;
}

ValidationReport validate_H(const ColouredGraph& g, const HStructure& h) {
  require_disjoint({&h.X1, &h.X2});
  ValidationReport r;
  check_sizes_clause(r, "X1", h.X1, h.x1);
  check_sizes_clause(r, "X2", h.X2, h.x2);
  VertexSet span = h.X1.unite(h.X2);
  // H is the two-coloured spanning subgraph: degrees count gamma1/gamma2.
  check_almost_complete(r, g, span, h.c1,
                        std::make_pair(h.gamma1, h.gamma2));
  long n1 = h.X1.size();
  Bits m1 = h.X1.mask(g.size());
  Bits m2 = h.X2.mask(g.size());
  for (int v : h.X1) {
    long d1 = g.neighbours(h.gamma1, v).count_and(m1);
    long d2 = g.neighbours(h.gamma2, v).count_and(m1);
    if (n1 > 1 && !complete_enough(h.c2, n1 - 1, d1)) {
      add_violation(r, "(iii)(a)", "gamma1 degree of " + std::to_string(v) +
                                       " inside X1 too small");
      break;
    }
    if (n1 > 1 && !sparse_enough(h.c2, n1 - 1, d2)) {
      add_violation(r, "(iii)(a)", "gamma2 degree of " + std::to_string(v) +
                                       " inside X1 too large");
      break;
    }
  }
  for (int v : h.X1) {
    long c2deg = g.neighbours(h.gamma2, v).count_and(m2);
    long c1deg = g.neighbours(h.gamma1, v).count_and(m2);
    if (!h.X2.empty() && !complete_enough(h.c2, h.X2.size(), c2deg)) {
      add_violation(r, "(iii)(b)", "gamma2 cross degree of " +
                                       std::to_string(v) + " too small");
      break;
    }
    if (!h.X2.empty() && !sparse_enough(h.c2, h.X2.size(), c1deg)) {
      add_violation(r, "(iii)(b)", "gamma1 cross degree of " +
                                       std::to_string(v) + " too large");
      break;
    }
  }
  for (int v : h.X2) {
    long c2deg = g.neighbours(h.gamma2, v).count_and(m1);
    long c1deg = g.neighbours(h.gamma1, v).count_and(m1);
    if (n1 > 0 && !complete_enough(h.c2, n1, c2deg)) {
      add_violation(r, "(iii)(b)", "gamma2 cross degree of " +
                                       std::to_string(v) + " too small");
      break;
    }
    if (n1 > 0 && !sparse_enough(h.c2, n1, c1deg)) {
      add_violation(r, "(iii)(b)", "gamma1 cross degree of " +
                                       std::to_string(v) + " too large");
      break;
    }
  }
  return r;
}

ValidationReport validate_K(const ColouredGraph& g, const KStructure& k) {
  require_disjoint({&k.X1, &k.X2, &k.X3});
  ValidationReport r;
  check_sizes_clause(r, "X1", k.X1, k.x1);
  check_sizes_clause(r, "X2", k.X2, k.x2);
  check_sizes_clause(r, "X3", k.X3, k.x3);
  VertexSet span = k.X1.unite(k.X2).unite(k.X3);
  check_almost_complete(r, g, span, k.c, std::nullopt);
  check_exclusive(r, g, k.X1, k.X3, Colour::Red, "[X1,X3]");
  check_exclusive(r, g, k.X2, k.X3, Colour::Blue, "[X2,X3]");
  check_exclusive(r, g, k.X3, k.X3, Colour::Green, "[X3]");
  return r;
}

ValidationReport validate_K_star(const ColouredGraph& g,
                                 const KStarStructure& k) {
  require_disjoint({&k.X1, &k.X2, &k.Y1, &k.Y2});
  ValidationReport r;
  check_sizes_clause(r, "X1", k.X1, k.x1);
  check_sizes_clause(r, "X2", k.X2, k.x2);
  check_sizes_clause(r, "Y1", k.Y1, k.y1);
  check_sizes_clause(r, "Y2", k.Y2, k.y2);
  if (k.z.gt(rat(k.Y1.size() + k.Y2.size())))
    add_violation(r, "(i)", "|Y1| + |Y2| below z");
  VertexSet span = k.X1.unite(k.X2).unite(k.Y1).unite(k.Y2);
  check_almost_complete(r, g, span, k.c, std::nullopt);
  check_exclusive(r, g, k.X1, k.Y1, Colour::Red, "[X1,Y1]");
  check_exclusive(r, g, k.X2, k.Y2, Colour::Red, "[X2,Y2]");
  check_exclusive(r, g, k.X1, k.Y2, Colour::Blue, "[X1,Y2]");
  check_exclusive(r, g, k.X2, k.Y1, Colour::Blue, "[X2,Y1]");
  check_exclusive(r, g, k.X1, k.X2, Colour::Green, "[X1,X2]");
  check_exclusive(r, g, k.Y1, k.Y2, Colour::Green, "[Y1,Y2]");
  return r;
}

namespace {

ColouredGraph complete_with(int n,
                            const std::function<Colour(int, int)>& pick) {
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      es.push_back({i, j, ColourSet::of(pick(i, j))});
  return ColouredGraph::build(n, es);
}

}  // namespace

ColouredGraph build_H(int x1, int x2, Colour gamma1, Colour gamma2) {
  if (x1 < 1 || x2 < 1) throw PreconditionError("sizes must be positive");
  if (gamma1 == gamma2) throw PreconditionError("gamma colours must differ");
  return complete_with(x1 + x2, [&](int i, int j) {
    bool i1 = i < x1, j1 = j < x1;
    if (i1 && j1) return gamma1;
    if (!i1 && !j1) return gamma2;  // inside X2; H must stay two-coloured
    return gamma2;
  });
}

ColouredGraph build_K(int x1, int x2, int x3) {
  if (x1 < 1 || x2 < 1 || x3 < 1)
    throw PreconditionError("sizes must be positive");
  auto part = [&](int v) { return v < x1 ? 0 : (v < x1 + x2 ? 1 : 2); };
  return complete_with(x1 + x2 + x3, [&](int i, int j) {
    int pi = part(i), pj = part(j);
    if (pi > pj) std::swap(pi, pj);
    if (pi == 0 && pj == 2) return Colour::Red;
    if (pi == 1 && pj == 2) return Colour::Blue;
    return Colour::Green;  // [X3], and the unconstrained pairs
  });
}

ColouredGraph build_K_star(int x1, int x2, int y1, int y2) {
  if (x1 < 1 || x2 < 1 || y1 < 1 || y2 < 1)
    throw PreconditionError("sizes must be positive");
  auto part = [&](int v) {
    if (v < x1) return 0;
    if (v < x1 + x2) return 1;
    if (v < x1 + x2 + y1) return 2;
    return 3;
  };
  return complete_with(x1 + x2 + y1 + y2, [&](int i, int j) {
    int pi = part(i), pj = part(j);
    if (pi > pj) std::swap(pi, pj);
    if ((pi == 0 && pj == 2) || (pi == 1 && pj == 3)) return Colour::Red;
    if ((pi == 0 && pj == 3) || (pi == 1 && pj == 2)) return Colour::Blue;
    return Colour::Green;  // [X1,X2], [Y1,Y2], and inside the parts
  });
}

// ---------------------------------------------------------------------------
// Search.

namespace {

// Class layout: parts 0..P-1 are structure parts, class P means "not used".
struct ClassSpec {
  int parts;
  // exclusivity table: for each unordered pair of parts, the required
  // exclusive colour, or -1 for unconstrained.
  int required[4][4];
};

ClassSpec spec_for(StructureClass cls) {
  ClassSpec s{};
  for (auto& row : s.required)
    for (auto& x : row) x = -1;
  switch (cls) {
    case StructureClass::H:
      s.parts = 2;
      break;
    case StructureClass::K:
      s.parts = 3;
      s.required[0][2] = index(Colour::Red);
      s.required[1][2] = index(Colour::Blue);
      s.required[2][2] = index(Colour::Green);
      break;
    case StructureClass::KStar:
      s.parts = 4;
      s.required[0][2] = index(Colour::Red);
      s.required[1][3] = index(Colour::Red);
      s.required[0][3] = index(Colour::Blue);
      s.required[1][2] = index(Colour::Blue);
      s.required[0][1] = index(Colour::Green);
      s.required[2][3] = index(Colour::Green);
      break;
  }
  return s;
}

StructureCertificate make_certificate(const StructureQuery& q,
                                      const std::vector<VertexSet>& parts) {
  switch (q.cls) {
    case StructureClass::H: {
      HStructure h;
      h.X1 = parts[0];
      h.X2 = parts[1];
      h.x1 = q.x1;
      h.x2 = q.x2;
      h.c1 = q.c1;
      h.c2 = q.c2;
      h.gamma1 = q.gamma1;
      h.gamma2 = q.gamma2;
      return h;
    }
    case StructureClass::K: {
      KStructure k;
      k.X1 = parts[0];
      k.X2 = parts[1];
      k.X3 = parts[2];
      k.x1 = q.x1;
      k.x2 = q.x2;
      k.x3 = q.x3;
      k.c = q.c;
      return k;
    }
    case StructureClass::KStar:
    default: {
      KStarStructure k;
      k.X1 = parts[0];
      k.X2 = parts[1];
      k.Y1 = parts[2];
      k.Y2 = parts[3];
      k.x1 = q.x1;
      k.x2 = q.x2;
      k.y1 = q.y1;
      k.y2 = q.y2;
      k.z = q.z;
      k.c = q.c;
      return k;
    }
  }
}

ValidationReport validate_any(const ColouredGraph& g, const HStructure& h) {
  return validate_H(g, h);
}
ValidationReport validate_any(const ColouredGraph& g, const KStructure& k) {
  return validate_K(g, k);
}
ValidationReport validate_any(const ColouredGraph& g,
                              const KStarStructure& k) {
  return validate_K_star(g, k);
}

bool validate_assignment(const ColouredGraph& g, const StructureQuery& q,
                         const std::vector<int>& assign,
                         StructureCertificate* out) {
  int parts_n = spec_for(q.cls).parts;
  std::vector<std::vector<int>> members(parts_n);
  for (int v = 0; v < g.size(); ++v)
    if (assign[v] < parts_n) members[assign[v]].push_back(v);
  std::vector<VertexSet> parts;
  parts.reserve(parts_n);
  for (auto& m : members) parts.push_back(VertexSet::of(std::move(m)));
  auto cert = make_certificate(q, parts);
  ValidationReport rep =
      std::visit([&](const auto& s) { return validate_any(g, s); }, cert);
  if (!rep.valid) return false;
  if (out) *out = cert;
  return true;
}

}  // namespace

FindResult find_structure_seeded(const ColouredGraph& g,
                                 const StructureQuery& q,
                                 const std::vector<VertexSet>& seed_parts,
                                 long budget) {
  const ClassSpec spec = spec_for(q.cls);
  const int none = spec.parts;
  const int n = g.size();
  FindResult res;

  double space = std::pow(double(spec.parts + 1), double(n));
  if (n <= 12 && space <= double(1 << 24)) {
    // Exhaustive ordered-partition search with per-edge pruning on the
    // exclusivity table; the first valid assignment in lexicographic order
    // wins.
    std::vector<int> assign(n, none);
    long checked = 0;
    StructureCertificate found_cert;
    bool found = false;

    // prefix feasibility: edges between already-assigned vertices
    auto edge_ok = [&](int v, int cls) {
      if (cls == none) return true;
      for (int u = 0; u < v; ++u) {
        int cu = assign[u];
        if (cu == none) continue;
        int a = std::min(cu, cls), b = std::max(cu, cls);
        int req = spec.required[a][b];
        if (req < 0) continue;
        if (!g.has_edge(u, v)) continue;  // absences are a budget matter
        if (!g.colours(u, v).only(static_cast<Colour>(req))) return false;
      }
      return true;
    };

    std::function<void(int)> rec = [&](int v) {
      if (found) return;
      if (v == n) {
        ++checked;
        StructureCertificate cert;
        if (validate_assignment(g, q, assign, &cert)) {
          found = true;
          found_cert = std::move(cert);
        }
        return;
      }
      for (int cls = 0; cls <= none; ++cls) {
        if (cls < none && !edge_ok(v, cls)) continue;
        assign[v] = cls;
        rec(v + 1);
        assign[v] = none;
        if (found) return;
      }
    };
    rec(0);
    res.exhaustive = true;
    res.partitions_checked = checked;
    if (found) res.found = std::move(found_cert);
    return res;
  }

  // Seeded local search: hill-climb on a violation count.
  auto floors = [&]() {
    std::vector<long> f(spec.parts, 0);
    switch (q.cls) {
      case StructureClass::H:
        f = {ceil_alg(q.x1), ceil_alg(q.x2)};
        break;
      case StructureClass::K:
        f = {ceil_alg(q.x1), ceil_alg(q.x2), ceil_alg(q.x3)};
        break;
      case StructureClass::KStar:
        f = {ceil_alg(q.x1), ceil_alg(q.x2), ceil_alg(q.y1), ceil_alg(q.y2)};
        break;
    }
    for (auto& x : f) x = std::max(x, 0L);
    return f;
  }();

  auto score = [&](const std::vector<int>& assign) {
    long s = 0;
    std::vector<long> count(spec.parts + 1, 0);
    for (int v = 0; v < n; ++v) ++count[assign[v]];
    for (int p = 0; p < spec.parts; ++p)
      s += std::max(0L, floors[p] - count[p]) * 4;
    for (const auto& [u, v, cs] : g.edges()) {
      int a = assign[u], b = assign[v];
      if (a == none || b == none) continue;
      if (a > b) std::swap(a, b);
      int req = spec.required[a][b];
      if (req >= 0 && !cs.only(static_cast<Colour>(req))) ++s;
    }
    return s;
  };

  std::vector<std::vector<int>> seeds;
  if (!seed_parts.empty()) {
    std::vector<int> assign(n, none);
    for (int p = 0; p < std::min<int>(spec.parts, int(seed_parts.size())); ++p)
      for (int v : seed_parts[p]) assign[v] = p;
    seeds.push_back(assign);
  }
  {
    // degree-profile seed: order parts by dominant colour degrees
    std::vector<int> assign(n, 0);
    for (int v = 0; v < n; ++v) {
      int dr = g.degree(Colour::Red, v);
      int db = g.degree(Colour::Blue, v);
      int dg = g.degree(Colour::Green, v);
      int cls = 0;
      if (q.cls == StructureClass::K) {
        cls = dg >= dr && dg >= db ? 2 : (dr >= db ? 0 : 1);
      } else if (q.cls == StructureClass::H) {
        cls = dr >= db ? 0 : 1;
      } else {
        cls = dr >= db ? (dg >= dr ? 2 : 0) : (dg >= db ? 3 : 1);
      }
      assign[v] = cls;
    }
    seeds.push_back(assign);
  }

  std::mt19937_64 rng(12345);
  long restarts = 0;
  for (; restarts < budget; ++restarts) {
    std::vector<int> assign;
    if (size_t(restarts) < seeds.size()) {
      assign = seeds[restarts];
    } else {
      assign = seeds[restarts % seeds.size()];
      // perturb deterministically
      std::mt19937_64 r2(1000 + restarts);
      for (int v = 0; v < n; ++v)
        if (r2() % 8 == 0) assign[v] = int(r2() % (spec.parts + 1));
    }
    long cur = score(assign);
    for (int sweep = 0; sweep < 40 && cur > 0; ++sweep) {
      bool improved = false;
      for (int v = 0; v < n; ++v) {
        int best_cls = assign[v];
        long best = cur;
        int saved = assign[v];
        for (int cls = 0; cls <= none; ++cls) {
          if (cls == saved) continue;
          assign[v] = cls;
          long sc = score(assign);
          if (sc < best) {
            best = sc;
            best_cls = cls;
          }
        }
        assign[v] = best_cls;
        if (best < cur) {
          cur = best;
          improved = true;
        }
      }
      if (!improved) break;
    }
    ++res.restarts_used;
    StructureCertificate cert;
    if (validate_assignment(g, q, assign, &cert)) {
      res.found = std::move(cert);
      return res;
    }
  }
  res.budget_exhausted = true;
  return res;
}

FindResult find_structure(const ColouredGraph& g, const StructureQuery& q,
                          long budget) {
  return find_structure_seeded(g, q, {}, budget);
}

}  // namespace ramsey
