#include "ramsey/certifier.hpp"

#include <algorithm>
#include <sstream>

namespace ramsey {

namespace {

Alg sqrt_eta_times(const Rational& coeff, const ScaledParams& p) {
  return Alg::rooted(rat(0), coeff * p.k, p.eta, 2);
}

Alg eta_root_times(const Rational& r_part, const Rational& coeff, int root,
                   const ScaledParams& p) {
  return Alg::rooted(r_part * p.k, coeff * p.k, p.eta, root);
}

}  // namespace

Rational ScaledParams::eta_b2() const {
  Rational a = rat(1, 100000);
  Rational b = alpha2 / pow_rat(rat(10), 24);
  Rational c2 = pow_rat(alpha2 / 100, 8);
  Rational d = pow_rat(alpha2 / (1200 * alpha1), 2);
  return std::min({a, b, c2, d});
}

long ScaledParams::k_window_low() const { return ceil_rat((c() - eta) * k); }

long ScaledParams::k_window_high() const {
  return floor_rat((c() - eta / 2) * k);
}

void ScaledParams::validate(const Rational& slack) const {
  if (!(alpha1 >= alpha2 && alpha2 > 0 && alpha3 > 0))
    throw PreconditionError("need alpha1 >= alpha2 > 0 and alpha3 > 0");
  if (k < 1) throw PreconditionError("k must be positive");
  if (!(eta > 0)) throw PreconditionError("eta must be positive");
  if (!(eta < eta_b2() * slack))
    throw PreconditionError("eta exceeds the parameter ceiling (with slack)");
  if (enforce_scaling) {
    if (!(Rational(2) >= alpha3 && alpha3 >= 1 && Rational(1) >= alpha1))
      throw PreconditionError("scaling convention 2>=a3>=1>=a1>=a2 violated");
  }
}

Json ScaledParams::to_json() const {
  Json j;
  j["alpha1"] = rat_str(alpha1);
  j["alpha2"] = rat_str(alpha2);
  j["alpha3"] = rat_str(alpha3);
  j["eta"] = rat_str(eta);
  j["k"] = k;
  return j;
}

ScaledParams ScaledParams::from_json(const Json& j) {
  ScaledParams p;
  p.alpha1 = rat_parse(j.at("alpha1").get<std::string>());
  p.alpha2 = rat_parse(j.at("alpha2").get<std::string>());
  p.alpha3 = rat_parse(j.at("alpha3").get<std::string>());
  p.eta = rat_parse(j.at("eta").get<std::string>());
  p.k = j.at("k").get<long>();
  if (j.contains("enforce_scaling"))
    p.enforce_scaling = j.at("enforce_scaling").get<bool>();
  return p;
}

HStructure h1_params(const ScaledParams& p) {
  HStructure h;
  h.x1 = eta_root_times(p.alpha1, rat(-2), 32, p);
  h.x2 = eta_root_times(p.alpha2 / 2, rat(-2), 32, p);
  h.c1 = Alg(3 * pow_rat(p.eta, 4) * p.k);
  h.c2 = Alg::rooted(rat(0), rat(1), p.eta, 32);
  h.gamma1 = Colour::Red;
  h.gamma2 = Colour::Blue;
  return h;
}

HStructure h2_params(const ScaledParams& p) {
  HStructure h = h1_params(p);
  h.x1 = eta_root_times(p.alpha2, rat(-2), 32, p);
  h.x2 = eta_root_times(p.alpha1 / 2, rat(-2), 32, p);
  h.gamma1 = Colour::Blue;
  h.gamma2 = Colour::Red;
  return h;
}

KStructure k_params(const ScaledParams& p) {
  KStructure k;
  k.x1 = eta_root_times(p.alpha1 / 2, rat(-14000), 2, p);
  k.x2 = eta_root_times(p.alpha2 / 2, rat(-14000), 2, p);
  k.x3 = eta_root_times(p.alpha3, rat(-68000), 2, p);
  k.c = Alg(4 * pow_rat(p.eta, 4) * p.k);
  return k;
}

KStarStructure kstar1_params(const ScaledParams& p) {
  KStarStructure k;
  k.x1 = eta_root_times(p.alpha1 / 2, rat(-97), 2, p);
  k.x2 = eta_root_times(p.alpha1 / 2, rat(-97), 2, p);
  k.y1 = eta_root_times(p.alpha1 / 2, rat(102), 2, p);
  k.y2 = eta_root_times(p.alpha1 / 2, rat(102), 2, p);
  k.z = eta_root_times(p.alpha3, rat(-10), 2, p);
  k.c = Alg(4 * pow_rat(p.eta, 4) * p.k);
  return k;
}

KStarStructure kstar2_params(const ScaledParams& p) {
  KStarStructure k;
  k.x1 = eta_root_times(p.alpha1 / 2, rat(-97), 2, p);
  k.x2 = eta_root_times(p.alpha2 / 2, rat(-97), 2, p);
  k.y1 = eta_root_times(3 * p.alpha3 / 4, rat(-140), 2, p);
  k.y2 = sqrt_eta_times(rat(100), p);
  k.z = eta_root_times(p.alpha3, rat(-10), 2, p);
  k.c = Alg(4 * pow_rat(p.eta, 4) * p.k);
  return k;
}

const char* tag_name(StabilityOutcome::Tag t) {
  switch (t) {
    case StabilityOutcome::Tag::RedMatching:
      return "red-matching";
    case StabilityOutcome::Tag::BlueMatching:
      return "blue-matching";
    case StabilityOutcome::Tag::GreenOddMatching:
      return "green-odd-matching";
    case StabilityOutcome::Tag::DoubleH:
      return "double-H";
    case StabilityOutcome::Tag::K:
      return "K";
    case StabilityOutcome::Tag::KStar:
      return "K-star";
    case StabilityOutcome::Tag::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Json StabilityOutcome::to_json() const {
  Json j;
  j["tag"] = tag_name(tag);
  if (matching) j["matching"] = matching->to_json();
  if (double_h)
    j["double_h"] = Json::array(
        {double_h->first.to_json(), double_h->second.to_json()});
  if (k_structure) j["k_structure"] = k_structure->to_json();
  if (k_star) j["k_star"] = k_star->to_json();
  Json tr = Json::array();
  for (const auto& [stage, note] : transcript)
    tr.push_back({{"stage", stage}, {"note", note}});
  j["transcript"] = std::move(tr);
  return j;
}

// ---------------------------------------------------------------------------

namespace {

struct Pipeline {
  const ColouredGraph& g;
  const ScaledParams& p;
  Rational slack;
  DiscardSchedule schedule;
  StabilityOutcome out;

  void note(const std::string& stage, const std::string& text) {
    out.transcript.emplace_back(stage, text);
  }

  Alg budget(long units) const {
    return Alg::rooted(rat(0), units * slack * p.k, p.eta, 2);
  }

  long budget_count(long units) const { return floor_alg(budget(units)); }

  // Stage 1: exact matching searches for outcomes (i)-(iii).
  bool exact_matchings() {
    struct Want {
      Colour colour;
      Rational need;
      StabilityOutcome::Tag tag;
      bool odd;
    };
    const Want wants[] = {
        {Colour::Red, p.alpha1 * p.k, StabilityOutcome::Tag::RedMatching,
         false},
        {Colour::Blue, p.alpha2 * p.k, StabilityOutcome::Tag::BlueMatching,
         false},
        {Colour::Green, p.alpha3 * p.k,
         StabilityOutcome::Tag::GreenOddMatching, true},
    };
    for (const auto& w : wants) {
      auto cert = w.odd ? largest_odd_connected_matching(g, w.colour)
                        : largest_connected_matching(g, w.colour);
      std::ostringstream os;
      os << name(w.colour) << (w.odd ? " odd" : "") << " matching "
         << cert.vertex_count() << " vs " << rat_str(w.need);
      note("exact-search", os.str());
      if (Rational(cert.vertex_count()) >= w.need) {
        out.tag = w.tag;
        out.matching = std::move(cert);
        return true;
      }
    }
    return false;
  }

  // Purify [core, s1] to red, [core, s2] to blue, the core to green, then
  // validate the K floors on what remains.
  std::optional<KStructure> k_attempt(const VertexSet& core,
                                      const VertexSet& s1,
                                      const VertexSet& s2) {
    auto pr1 = purify_pair(g, core, s1, Colour::Red,
                           budget_count(schedule.cross_major));
    if (!pr1.purified) {
      note("purify", "violation while clearing [core,S1] to red");
      return std::nullopt;
    }
    auto pr2 = purify_pair(g, core, s2, Colour::Blue,
                           budget_count(schedule.cross_minor));
    if (!pr2.purified) {
      note("purify", "violation while clearing [core,S2] to blue");
      return std::nullopt;
    }
    auto pin = purify_inside(g, core, Colour::Green,
                             budget_count(schedule.inner_core));
    if (!pin.purified) {
      note("purify", "violation while clearing the core to green");
      return std::nullopt;
    }
    KStructure cand = k_params(p);
    cand.X3 = core.minus(pr1.discarded_a)
                  .minus(pr2.discarded_a)
                  .minus(pin.discarded_a);
    cand.X1 = s1.minus(pr1.discarded_b);
    cand.X2 = s2.minus(pr2.discarded_b);
    auto rep = validate_K(g, cand);
    if (rep.valid) return cand;
    std::ostringstream os;
    os << "K candidate invalid:";
    for (const auto& v : rep.violations) os << " " << v.clause << " " << v.detail;
    note("k-attempt", os.str());
    return std::nullopt;
  }

  std::optional<KStarStructure> kstar_attempt(const VertexSet& l1,
                                              const VertexSet& l2,
                                              const VertexSet& q1,
                                              const VertexSet& q2) {
    struct Step {
      const VertexSet *a, *b;
      Colour keep;
    };
    const Step steps[] = {
        {&l1, &q1, Colour::Red},  {&l2, &q2, Colour::Red},
        {&l1, &q2, Colour::Blue}, {&l2, &q1, Colour::Blue},
        {&l1, &l2, Colour::Green}, {&q1, &q2, Colour::Green},
    };
    std::vector<VertexSet> trimmed{l1, l2, q1, q2};
    auto trim = [&](const VertexSet* side, const VertexSet& drop) {
      const VertexSet* bases[] = {&l1, &l2, &q1, &q2};
      for (int i = 0; i < 4; ++i)
        if (bases[i] == side) trimmed[i] = trimmed[i].minus(drop);
    };
    for (const auto& st : steps) {
      auto res = purify_pair(g, *st.a, *st.b, st.keep,
                             budget_count(schedule.cross_major));
      if (!res.purified) {
        note("purify", "violation while clearing a K* block");
        return std::nullopt;
      }
      trim(st.a, res.discarded_a);
      trim(st.b, res.discarded_b);
    }
    using KStarMaker = KStarStructure (*)(const ScaledParams&);
    for (KStarMaker maker : {&kstar1_params, &kstar2_params}) {
      KStarStructure cand = maker(p);
      cand.X1 = trimmed[0];
      cand.X2 = trimmed[1];
      cand.Y1 = trimmed[2];
      cand.Y2 = trimmed[3];
      auto rep = validate_K_star(g, cand);
      if (rep.valid) return cand;
    }
    note("kstar-attempt", "K* candidate failed both parameter sets");
    return std::nullopt;
  }

  // Splits `q` by a maximum major-coloured matching against `core` and runs
  // the K attempt in both colour orientations.
  bool core_vs_rest(const VertexSet& core, const VertexSet& q) {
    for (Colour major : {Colour::Red, Colour::Blue}) {
      Matching r = max_bipartite_matching(g, major, core, q);
      std::vector<int> matched;
      for (auto [u, v] : r.edges) {
        matched.push_back(q.contains(u) ? u : v);
      }
      VertexSet q1 = VertexSet::of(std::move(matched));
      VertexSet q2 = q.minus(q1);
      std::ostringstream os;
      os << name(major) << " split of the rest: " << q1.size() << " + "
         << q2.size();
      note("core-split", os.str());
      auto cand = major == Colour::Red ? k_attempt(core, q1, q2)
                                       : k_attempt(core, q2, q1);
      if (cand) {
        out.tag = StabilityOutcome::Tag::K;
        out.k_structure = std::move(*cand);
        return true;
      }
    }
    return false;
  }

  // Cross-pattern route: strip the inside edges of L and Q, run the
  // two-hole analysis, and on a cross partition drive the K* purification.
  bool cross_pattern(const VertexSet& l, const VertexSet& q) {
    VertexSet span = l.unite(q);
    auto ind = induced_subgraph(g, span);
    std::vector<int> to_local(g.size(), -1);
    for (size_t i = 0; i < ind.to_parent.size(); ++i)
      to_local[ind.to_parent[i]] = int(i);
    // strip inside edges
    std::vector<int> lloc, qloc;
    for (int v : l) lloc.push_back(to_local[v]);
    for (int v : q) qloc.push_back(to_local[v]);
    VertexSet llocal = VertexSet::of(std::move(lloc));
    VertexSet qlocal = VertexSet::of(std::move(qloc));
    std::vector<EdgeSpec> cross;
    for (const auto& [u, v, cs] : ind.graph.edges()) {
      bool ul = llocal.contains(u);
      bool vl = llocal.contains(v);
      if (ul != vl) cross.push_back({u, v, cs});
    }
    ColouredGraph stripped = ColouredGraph::build(ind.graph.size(), cross);
    // choose a feasible eta' for the two-hole analysis
    long kk = stripped.size();
    long min_side = std::min(llocal.size(), qlocal.size());
    Rational eta_size = rat(min_side) / rat(6 * kk);
    Rational eta_lo = rat(2) / rat(kk);
    // completeness: worst missing cross degree / (kk - 1)
    long worst_miss = 0;
    {
      Bits lm = llocal.mask(kk), qm = qlocal.mask(kk);
      for (int v = 0; v < kk; ++v) {
        const Bits& other = llocal.contains(v) ? qm : lm;
        long other_n = llocal.contains(v) ? qlocal.size() : llocal.size();
        long have = stripped.neighbours_any(v).count_and(other);
        long own = kk - other_n;
        worst_miss = std::max(worst_miss, (kk - 1) - (own - 1) - have);
      }
    }
    Rational eta_complete =
        kk > 1 ? Rational(rat(worst_miss) / rat(kk - 1)) : rat(0);
    Rational eta_eff =
        std::min(rat(99, 1000), std::min(eta_size, rat(99, 1000)));
    eta_eff = std::min(eta_eff, eta_size);
    if (eta_eff <= std::max(eta_lo, eta_complete) * 1) {
      eta_eff = std::max(eta_lo, eta_complete) + rat(1, 1000);
    }
    if (!(eta_eff > 0 && eta_eff < rat(1, 10)) ||
        Rational(min_side) < 6 * eta_eff * kk || Rational(kk) * eta_eff < 2) {
      note("cross-pattern", "no feasible eta for the two-hole analysis");
      return false;
    }
    LemmaOutcome th;
    try {
      th = two_holes_analysis(stripped, llocal, qlocal, eta_eff);
    } catch (const PreconditionError& e) {
      note("cross-pattern", std::string("two-hole preconditions: ") + e.what());
      return false;
    }
    note("cross-pattern", "two-hole outcome " + th.tag);
    if (th.tag != "ii") return false;
    auto part = [&](const char* nm) {
      for (const auto& [pname, vs] : th.parts)
        if (pname == nm) {
          std::vector<int> back;
          for (int v : vs) back.push_back(ind.to_parent[v]);
          return VertexSet::of(std::move(back));
        }
      return VertexSet();
    };
    VertexSet a1 = part("A1"), a2 = part("A2"), b1 = part("B1"),
              b2 = part("B2");
    // A-side of the analysis corresponds to whichever of L, Q was labelled
    // first; map so the L parts come first.
    VertexSet l1 = a1, l2 = a2, q1 = b1, q2 = b2;
    if (!a1.empty() && !l.contains(*a1.begin())) {
      l1 = b1;
      l2 = b2;
      q1 = a1;
      q2 = a2;
    }
    auto cand = kstar_attempt(l1, l2, q1, q2);
    if (cand) {
      out.tag = StabilityOutcome::Tag::KStar;
      out.k_star = std::move(*cand);
      return true;
    }
    return false;
  }

  bool case_odd(const ConnectedMatchingCertificate& f) {
    note("dispatch", "odd-F");
    OddCoreDecomposition core;
    try {
      core = odd_core_decomposition(g, f);
    } catch (const Error& e) {
      note("odd-core", std::string("decomposition failed: ") + e.what());
      return false;
    }
    std::ostringstream os;
    os << "|M|=" << core.M.size() << " |N|=" << core.N.size()
       << " |P|=" << core.P.size() << " |Q|=" << core.Q.size();
    note("odd-core", os.str());
    VertexSet l = core.M.unite(core.N);
    Alg small = budget(95);
    bool p_small = small.geq(rat(core.P.size()));
    bool q_small = small.geq(rat(core.Q.size()));
    if (p_small) {
      note("odd-core", "P below the discard threshold; using L vs Q");
      if (cross_pattern(l, core.Q)) return true;
      if (core_vs_rest(l, core.Q)) return true;
    }
    if (q_small && !core.P.empty()) {
      note("odd-core", "Q below the discard threshold; using L vs P");
      if (cross_pattern(l, core.P)) return true;
      if (core_vs_rest(l, core.P)) return true;
    }
    if (!p_small && !q_small) {
      note("odd-core", "P and Q both substantial");
      VertexSet rest = core.P.unite(core.Q);
      if (cross_pattern(l, rest)) return true;
      if (core_vs_rest(l, rest)) return true;
    }
    // Last resort: seeded local structure search.
    StructureQuery kq;
    kq.cls = StructureClass::K;
    KStructure kp = k_params(p);
    kq.x1 = kp.x1;
    kq.x2 = kp.x2;
    kq.x3 = kp.x3;
    kq.c = kp.c;
    auto seeded = find_structure_seeded(
        g, kq, {core.P.unite(core.Q), VertexSet(), l}, 4);
    if (seeded.found) {
      if (auto* kk = std::get_if<KStructure>(&*seeded.found)) {
        auto rep = validate_K(g, *kk);
        if (rep.valid) {
          out.tag = StabilityOutcome::Tag::K;
          out.k_structure = *kk;
          return true;
        }
      }
    }
    note("odd-core", "no structure found");
    return false;
  }

  bool case_even(const ConnectedMatchingCertificate&) {
    auto xyw = green_xyw(g);
    std::ostringstream os;
    os << "|X|=" << xyw.X.size() << " |Y|=" << xyw.Y.size()
       << " |W|=" << xyw.W.size();
    note("green-split", os.str());
    Alg wide = budget(7);
    if (wide.leq(rat(xyw.W.size()))) {
      note("dispatch", "even-F-wide-W");
      note("wide-W",
           "the wide-W route concludes in red/blue matchings, which the "
           "exact search already ruled out");
      return false;
    }
    note("dispatch", "even-F-narrow-W");
    // Structure detector on each side with the lemma's parameter sqrt(eta).
    Rational eta_lemma;
    {
      // exact square root when available, else a safe rational upper bound
      mpz_class num_root, den_root;
      bool exact_num = mpz_root(num_root.get_mpz_t(),
                                p.eta.get_num().get_mpz_t(), 2) != 0;
      bool exact_den = mpz_root(den_root.get_mpz_t(),
                                p.eta.get_den().get_mpz_t(), 2) != 0;
      if (exact_num && exact_den) {
        eta_lemma = Rational(num_root, den_root);
      } else {
        // rational upper bound on sqrt(eta); only used to parameterize the
        // detector, whose own checks are exact in its argument
        eta_lemma = Rational(num_root + 1, den_root);
      }
      eta_lemma.canonicalize();
    }
    SkbOptions opt;
    opt.eta_ceiling = rat(1);
    opt.precondition_slack = slack;
    std::optional<HStructure> hx, hy;
    for (const auto* side : {&xyw.X, &xyw.Y}) {
      if (side->empty()) {
        note("narrow-W", "empty side; no structure");
        return false;
      }
      auto ind = induced_subgraph(g, *side);
      LemmaOutcome skb;
      try {
        skb = red_blue_structure_detector(ind.graph, p.alpha1, p.alpha2,
                                          eta_lemma, p.k, opt);
      } catch (const PreconditionError& e) {
        note("narrow-W", std::string("detector preconditions: ") + e.what());
        return false;
      }
      note("narrow-W", "detector outcome " + skb.tag);
      if (skb.tag != "iii" && skb.tag != "iv") return false;
      HStructure h = skb.tag == "iii" ? h1_params(p) : h2_params(p);
      auto back = [&](const char* nm) {
        for (const auto& [pname, vs] : skb.parts)
          if (pname == nm) {
            std::vector<int> bb;
            for (int v : vs) bb.push_back(ind.to_parent[v]);
            return VertexSet::of(std::move(bb));
          }
        return VertexSet();
      };
      h.X1 = back("V_prime");
      h.X2 = back("V_dprime");
      auto rep = validate_H(g, h);
      if (!rep.valid) {
        note("narrow-W", "H candidate failed validation");
        return false;
      }
      (side == &xyw.X ? hx : hy) = std::move(h);
    }
    out.tag = StabilityOutcome::Tag::DoubleH;
    out.double_h = std::make_pair(std::move(*hx), std::move(*hy));
    return true;
  }
};

}  // namespace

StabilityOutcome certify_stability(const ColouredGraph& g,
                                   const ScaledParams& params,
                                   const Rational& slack,
                                   const DiscardSchedule& schedule) {
  params.validate(slack);
  long K = g.size();
  if (K < params.k_window_low() || K > params.k_window_high()) {
    std::ostringstream os;
    os << "K = " << K << " outside window [" << params.k_window_low() << ", "
       << params.k_window_high() << "]";
    throw PreconditionError(os.str());
  }
  if (!is_fraction_complete(g, pow_rat(params.eta, 4)))
    throw PreconditionError("graph is not (1-eta^4)-complete");

  Pipeline pl{g, params, slack, schedule, {}};
  pl.note("params", "K window [" + std::to_string(params.k_window_low()) +
                        ", " + std::to_string(params.k_window_high()) + "]");
  if (pl.exact_matchings()) {
    auto check = verify_outcome(g, params, pl.out);
    if (check.ok) return pl.out;
    pl.note("verify", "exact matching failed re-verification");
    pl.out = StabilityOutcome{};
  }

  auto f = largest_connected_matching(g, Colour::Green);
  bool handled = false;
  if (!f.empty() && f.odd_witness.has_value()) {
    handled = pl.case_odd(f);
  } else {
    handled = pl.case_even(f);
  }
  if (handled) {
    auto check = verify_outcome(g, params, pl.out);
    if (check.ok) return pl.out;
    std::ostringstream os;
    os << "candidate outcome failed re-verification:";
    for (const auto& v : check.violations) os << " " << v;
    pl.note("verify", os.str());
    auto transcript = std::move(pl.out.transcript);
    pl.out = StabilityOutcome{};
    pl.out.transcript = std::move(transcript);
  }
  pl.out.tag = StabilityOutcome::Tag::Inconclusive;
  return pl.out;
}

OutcomeCheck verify_outcome(const ColouredGraph& g, const ScaledParams& params,
                            const StabilityOutcome& outcome) {
  OutcomeCheck check;
  auto fail = [&](const std::string& s) { check.violations.push_back(s); };
  Alg kstar_window =
      eta_root_times(3 * params.alpha1 / 2 + params.alpha2 / 2, rat(-10), 2,
                     params);
  Alg h_window = eta_root_times(3 * params.alpha1 / 2 + params.alpha2 / 2,
                                rat(14), 2, params);

  switch (outcome.tag) {
    case StabilityOutcome::Tag::RedMatching:
    case StabilityOutcome::Tag::BlueMatching:
    case StabilityOutcome::Tag::GreenOddMatching: {
      if (!outcome.matching) {
        fail("matching payload missing");
        break;
      }
      const auto& cert = *outcome.matching;
      Colour want = outcome.tag == StabilityOutcome::Tag::RedMatching
                        ? Colour::Red
                        : outcome.tag == StabilityOutcome::Tag::BlueMatching
                              ? Colour::Blue
                              : Colour::Green;
      if (cert.matching.colour != want) fail("wrong matching colour");
      if (cert.mode != ConnectivityMode::ColourComponent)
        fail("theorem outcomes need colour-component connectivity");
      for (const auto& v : verify::certificate_violations(g, cert)) fail(v);
      Rational need = want == Colour::Red
                          ? params.alpha1 * params.k
                          : want == Colour::Blue ? params.alpha2 * params.k
                                                 : params.alpha3 * params.k;
      if (Rational(cert.vertex_count()) < need) fail("matching below bound");
      if (outcome.tag == StabilityOutcome::Tag::GreenOddMatching &&
          !cert.odd_witness)
        fail("odd witness missing");
      break;
    }
    case StabilityOutcome::Tag::DoubleH: {
      if (!outcome.double_h) {
        fail("H payload missing");
        break;
      }
      const auto& [ha, hb] = *outcome.double_h;
      VertexSet sa = ha.X1.unite(ha.X2);
      VertexSet sb = hb.X1.unite(hb.X2);
      if (!sa.disjoint_from(sb)) fail("H blocks overlap");
      // occurs only if a3 <= 3/2 a1 + 1/2 a2 + 14 sqrt(eta)
      if (h_window.lt(params.alpha3 * params.k))
        fail("furthermore window for double-H violated");
      bool either_h2 = false;
      for (const auto* h : {&ha, &hb}) {
        bool is_h1 = h->gamma1 == Colour::Red && h->gamma2 == Colour::Blue;
        bool is_h2 = h->gamma1 == Colour::Blue && h->gamma2 == Colour::Red;
        if (!is_h1 && !is_h2) {
          fail("H block with unexpected colour orientation");
          continue;
        }
        either_h2 |= is_h2;
        HStructure want = is_h1 ? h1_params(params) : h2_params(params);
        want.X1 = h->X1;
        want.X2 = h->X2;
        auto rep = validate_H(g, want);
        if (!rep.valid) {
          for (const auto& v : rep.violations)
            fail("H block: " + v.clause + " " + v.detail);
        }
      }
      if (either_h2) {
        // allowed only when a2 >= a1 - eta^(1/16)
        Alg gate = Alg::rooted(params.alpha1, rat(-1), params.eta, 16);
        if (gate.gt(params.alpha2))
          fail("H2 orientation not allowed for these alphas");
      }
      break;
    }
    case StabilityOutcome::Tag::K: {
      if (!outcome.k_structure) {
        fail("K payload missing");
        break;
      }
      if (kstar_window.gt(params.alpha3 * params.k))
        fail("furthermore window for K violated");
      KStructure want = k_params(params);
      want.X1 = outcome.k_structure->X1;
      want.X2 = outcome.k_structure->X2;
      want.X3 = outcome.k_structure->X3;
      auto rep = validate_K(g, want);
      for (const auto& v : rep.violations) fail("K: " + v.clause + " " + v.detail);
      break;
    }
    case StabilityOutcome::Tag::KStar: {
      if (!outcome.k_star) {
        fail("K* payload missing");
        break;
      }
      if (kstar_window.gt(params.alpha3 * params.k))
        fail("furthermore window for K* violated");
      bool any = false;
      using KStarMaker = KStarStructure (*)(const ScaledParams&);
      for (KStarMaker maker : {&kstar1_params, &kstar2_params}) {
        KStarStructure want = maker(params);
        want.X1 = outcome.k_star->X1;
        want.X2 = outcome.k_star->X2;
        want.Y1 = outcome.k_star->Y1;
        want.Y2 = outcome.k_star->Y2;
        if (validate_K_star(g, want).valid) {
          any = true;
          break;
        }
      }
      if (!any) fail("K* candidate matches neither parameter set");
      break;
    }
    case StabilityOutcome::Tag::Inconclusive:
      fail("no outcome claimed");
      break;
  }
  check.ok = check.violations.empty();
  return check;
}

}  // namespace ramsey
