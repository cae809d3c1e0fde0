// Command-line surface: formula evaluation, extremal constructions, the
// exhaustive Ramsey search, lemma drivers, structure checking, and the
// stability certifier.  Exit codes: 0 ok, 1 usage, 2 counterexample or
// violation, 3 budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "ramsey/certifier.hpp"
#include "ramsey/search.hpp"

using namespace ramsey;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCounterexample = 2;
constexpr int kExitBudget = 3;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void emit(const Json& j, bool as_json, const std::string& human) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human << "\n";
}

Rational param_rat(const Json& params, const std::string& key) {
  if (!params.contains(key)) throw Error("params file missing field " + key);
  const auto& v = params.at(key);
  if (v.is_string()) return rat_parse(v.get<std::string>());
  if (v.is_number_integer()) return rat(v.get<long>());
  throw Error("field " + key + " must be a rational string");
}

VertexSet param_set(const Json& params, const std::string& key) {
  if (!params.contains(key)) throw Error("params file missing field " + key);
  return vertex_set_from_json(params.at(key));
}

// Randomized property drivers behind `verify-lemma --trials`.  Each lemma
// gets instances drawn from its own precondition domain.
struct TrialDriver {
  std::mt19937_64 rng;
  explicit TrialDriver(std::uint64_t seed) : rng(seed) {}

  ColouredGraph two_coloured_complete_minus(int n, int misses, double p_red,
                                            double p_both = 0.05) {
    std::vector<std::vector<char>> present(n, std::vector<char>(n, 1));
    std::vector<int> missing(n, 0);
    int attempts = n * misses;
    while (attempts-- > 0) {
      int i = int(rng() % n), j = int(rng() % n);
      if (i == j || !present[i][j]) continue;
      if (missing[i] < misses && missing[j] < misses) {
        present[i][j] = present[j][i] = 0;
        ++missing[i];
        ++missing[j];
      }
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<EdgeSpec> es;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (!present[i][j]) continue;
        if (unit(rng) < p_both)
          es.push_back({i, j, ColourSet::of({Colour::Red, Colour::Blue})});
        else
          es.push_back({i, j, ColourSet::of(unit(rng) < p_red
                                                ? Colour::Red
                                                : Colour::Blue)});
      }
    return ColouredGraph::build(n, es);
  }

  bool one_trial(const std::string& lemma, Json& why) {
    if (lemma == "dgf0") {
      int n = 100;
      auto g = two_coloured_complete_minus(n, 4, 0.5);
      auto out = largest_component_two_coloured(g, rat(1, 20));
      why = out.to_json();
      return out.tag == "i" && out.verified;
    }
    if (lemma == "twoholes") {
      int k = 60;
      int na = 20 + int(rng() % 20);
      auto base = two_coloured_complete_minus(k, 3, 0.5);
      std::vector<EdgeSpec> es;
      for (const auto& [u, v, cs] : base.edges()) {
        bool in_a = u < na && v < na;
        bool in_b = u >= na && v >= na;
        if (in_a || in_b) continue;
        es.push_back({u, v, cs});
      }
      auto g = ColouredGraph::build(k, es);
      auto out = two_holes_analysis(g, VertexSet::range(0, na),
                                    VertexSet::range(na, k), rat(1, 15));
      why = out.to_json();
      return out.tag != "counterexample" && out.verified;
    }
    if (lemma == "eleven") {
      int nb = 4 + int(rng() % 30);
      int na = nb + int(rng() % 8);
      int a = int(rng() % ((nb + 1) / 2));
      std::vector<std::vector<char>> present(na, std::vector<char>(nb, 1));
      std::vector<int> ma(na, 0), mb(nb, 0);
      int attempts = na * nb;
      while (attempts-- > 0) {
        int i = int(rng() % na), j = int(rng() % nb);
        if (present[i][j] && ma[i] < a && mb[j] < a) {
          present[i][j] = 0;
          ++ma[i];
          ++mb[j];
        }
      }
      std::vector<EdgeSpec> es;
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
          if (present[i][j])
            es.push_back({i, na + j, ColourSet::of(Colour::Red)});
      auto g = ColouredGraph::build(na + nb, es);
      auto cert = greedy_almost_complete_matching(
          g, Colour::Red, VertexSet::range(0, na),
          VertexSet::range(na, na + nb), a, nb);
      why = cert.to_json();
      return cert.matching.size() >= nb - a && verify::certificate_ok(g, cert);
    }
    if (lemma == "ten") {
      int nb = 60 + int(rng() % 40);
      int na = nb + int(rng() % 40);
      Rational eps(1, 200);
      long budget = floor_rat(eps * na * nb);
      std::vector<EdgeSpec> es;
      long removed = 0;
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
          if (removed < budget && rng() % 97 == 0) {
            ++removed;
            continue;
          }
          es.push_back({i, na + j, ColourSet::of(Colour::Blue)});
        }
      auto g = ColouredGraph::build(na + nb, es);
      auto cert = dense_bipartite_matching(g, Colour::Blue,
                                           VertexSet::range(0, na),
                                           VertexSet::range(na, na + nb), eps);
      why = cert.to_json();
      Rational need = 2 * (Rational(1) - 3 * eps) * nb;
      return Rational(cert.vertex_count()) >= need;
    }
    if (lemma == "skbe") {
      int n = 80;
      auto g = two_coloured_complete_minus(n, 0, 0.5);
      auto out = balanced_two_colour_matching(g, rat(1, 100), n);
      why = out.to_json();
      return !out.counterexample() && out.verified;
    }
    throw Error("no randomized driver for lemma " + lemma);
  }
};

int cmd_formula(const std::string& theorem, long n, long m, long l,
                bool as_json) {
  long value =
      theorem == "A" ? ramsey_formula_A(n, m, l) : ramsey_formula_C(n, m, l);
  Json j;
  j["theorem"] = theorem;
  j["value"] = value;
  j["note"] = "conjectured asymptotic value";
  emit(j, as_json,
       std::to_string(value) + "  (conjectured asymptotic value)");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification and search engine for three-multicoloured "
               "almost-complete graphs"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  // ---- formula ----
  auto* formula = app.add_subcommand("formula", "evaluate the cycle formulas");
  std::string theorem = "A";
  long fn = 4, fm = 4, fl = 3;
  formula->add_option("--theorem", theorem)->check(CLI::IsMember({"A", "C"}));
  formula->add_option("--n", fn)->required();
  formula->add_option("--m", fm)->required();
  formula->add_option("--l", fl)->required();

  // ---- construct ----
  auto* construct =
      app.add_subcommand("construct", "emit a verified extremal colouring");
  std::string pattern = "touch-sets";
  long cn = 6, cm = 4, cl = 5;
  bool cverify = false;
  std::string cout_path;
  construct->add_option("--pattern", pattern)
      ->check(CLI::IsMember(
          {"touch-sets", "green-bipartite-rr", "green-bipartite-bb"}));
  construct->add_option("--n", cn)->required();
  construct->add_option("--m", cm)->required();
  construct->add_option("--l", cl)->required();
  construct->add_flag("--verify", cverify,
                      "re-run the cycle oracle on the output");
  construct->add_option("--out", cout_path, "write graph json here");

  // ---- search ----
  auto* search = app.add_subcommand("search", "exhaustive Ramsey search");
  int scolours = 2;
  long c1 = 3, c2 = 3, c3 = 3;
  int sN = 5;
  std::uint64_t sbudget = 50'000'000;
  std::uint64_t sseed = 0;
  int sthreads = 1;
  bool snoprune = false;
  search->add_option("--colours", scolours)->check(CLI::IsMember({2, 3}));
  search->add_option("--c1", c1)->required();
  search->add_option("--c2", c2)->required();
  search->add_option("--c3", c3);
  search->add_option("--N", sN)->required();
  search->add_option("--budget", sbudget);
  search->add_option("--seed", sseed);
  search->add_option("--threads", sthreads);
  search->add_flag("--no-prune", snoprune, "naive enumeration (cross-check)");

  // ---- verify-lemma ----
  auto* vl = app.add_subcommand("verify-lemma", "run a lemma checker");
  std::string lemma;
  std::string graph_path, params_path, artefact_path = "counterexample.json";
  long trials = 0;
  std::uint64_t lseed = 1;
  vl->add_option("--lemma", lemma)
      ->required()
      ->check(CLI::IsMember({"dirac", "eg", "dgf0", "dgf1", "twoholes", "ten",
                             "eleven", "skb", "skbe", "largew", "hole"}));
  vl->add_option("--graph", graph_path);
  vl->add_option("--params", params_path);
  vl->add_option("--trials", trials);
  vl->add_option("--seed", lseed);
  vl->add_option("--artefact", artefact_path);

  // ---- check-structure ----
  auto* cs = app.add_subcommand("check-structure",
                                "validate a structure certificate");
  std::string cs_graph, cs_cert;
  cs->add_option("--graph", cs_graph)->required();
  cs->add_option("--certificate", cs_cert)->required();

  // ---- certify ----
  auto* certify = app.add_subcommand("certify", "run the stability pipeline");
  std::string cgraph;
  std::string a1 = "1", a2 = "1", a3 = "1", eta = "1/100", slack_s = "1";
  long ck = 100;
  std::string outcome_path;
  certify->add_option("--graph", cgraph)->required();
  certify->add_option("--alpha1", a1)->required();
  certify->add_option("--alpha2", a2)->required();
  certify->add_option("--alpha3", a3)->required();
  certify->add_option("--eta", eta)->required();
  certify->add_option("--k", ck)->required();
  certify->add_option("--slack", slack_s);
  certify->add_option("--out", outcome_path, "write outcome json here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*formula) return cmd_formula(theorem, fn, fm, fl, as_json);

    if (*construct) {
      auto p = pattern_from_name(pattern);
      auto g = construct_lower_bound(*p, cn, cm, cl);
      if (cverify) {
        for (auto [colour, len] : {std::pair{Colour::Red, cn},
                                   {Colour::Blue, cm},
                                   {Colour::Green, cl}}) {
          if (len > g.size()) continue;
          CycleQuery q{colour, int(len), CycleQuery::Mode::ExactLength};
          if (find_mono_cycle(g, q).cycle) return kExitCounterexample;
        }
      }
      Json j = g.to_json();
      j["pattern"] = pattern;
      j["order"] = g.size();
      if (!cout_path.empty()) {
        std::ofstream out(cout_path);
        out << j.dump(2) << "\n";
      }
      emit(j, as_json,
           "order " + std::to_string(g.size()) + " colouring verified free of "
           "the three target cycles");
      return kExitOk;
    }

    if (*search) {
      SearchTargets t;
      t.lengths = scolours == 2 ? std::vector<int>{int(c1), int(c2)}
                                : std::vector<int>{int(c1), int(c2), int(c3)};
      auto rep = ramsey_search(t, sN, sbudget, sseed, sthreads, !snoprune);
      emit(rep.to_json(), as_json,
           std::string("verdict: ") +
               (rep.verdict == SearchReport::Verdict::AllColouringsHit
                    ? "all-colourings-hit"
                    : rep.verdict == SearchReport::Verdict::WitnessFound
                          ? "witness-found"
                          : "budget-exceeded"));
      if (rep.verdict == SearchReport::Verdict::BudgetExceeded)
        return kExitBudget;
      return kExitOk;
    }

    if (*vl) {
      Json params = params_path.empty() ? Json::object()
                                        : load_json(params_path);
      if (trials > 0) {
        TrialDriver driver(lseed);
        long failures = 0;
        Json first_failure;
        for (long i = 0; i < trials; ++i) {
          Json why;
          if (!driver.one_trial(lemma, why)) {
            if (failures == 0) first_failure = why;
            ++failures;
          }
        }
        Json j;
        j["lemma"] = lemma;
        j["trials"] = trials;
        j["failures"] = failures;
        emit(j, as_json,
             lemma + ": " + std::to_string(trials - failures) + "/" +
                 std::to_string(trials) + " trials verified");
        if (failures > 0) {
          std::ofstream out(artefact_path);
          out << first_failure.dump(2) << "\n";
          return kExitCounterexample;
        }
        return kExitOk;
      }
      if (graph_path.empty())
        throw Error("verify-lemma needs --graph or --trials");
      auto g = ColouredGraph::from_json(load_json(graph_path));
      LemmaOutcome out;
      if (lemma == "dirac") {
        auto colour = *colour_from_name(
            params.value("colour", std::string("red")));
        auto within = params.contains("within")
                          ? param_set(params, "within")
                          : VertexSet::range(0, g.size());
        auto cy = dirac_cycle(g, colour, within);
        out.lemma = "dirac";
        out.tag = "cycle";
        out.verified = true;
        out.parts.emplace_back("cycle", VertexSet::of(cy));
      } else if (lemma == "eg") {
        auto colour = *colour_from_name(
            params.value("colour", std::string("red")));
        int m = params.value("m", 3);
        auto cy = erdos_gallai_cycle(g, colour, m);
        out.lemma = "eg";
        out.tag = "cycle";
        out.verified = true;
        out.parts.emplace_back("cycle", VertexSet::of(cy));
      } else if (lemma == "dgf0") {
        out = largest_component_two_coloured(g, param_rat(params, "eta"));
      } else if (lemma == "dgf1") {
        out = one_hole_analysis(g, param_set(params, "W"),
                                param_rat(params, "eta"));
      } else if (lemma == "twoholes") {
        out = two_holes_analysis(g, param_set(params, "A"),
                                 param_set(params, "B"),
                                 param_rat(params, "eta"));
      } else if (lemma == "ten") {
        auto colour = *colour_from_name(
            params.value("colour", std::string("red")));
        auto cert = dense_bipartite_matching(g, colour, param_set(params, "A"),
                                             param_set(params, "B"),
                                             param_rat(params, "eps"));
        out.lemma = "ten";
        out.tag = "certificate";
        out.certificate = cert;
        out.verified = verify::certificate_ok(g, cert);
      } else if (lemma == "eleven") {
        auto colour = *colour_from_name(
            params.value("colour", std::string("red")));
        auto cert = greedy_almost_complete_matching(
            g, colour, param_set(params, "A"), param_set(params, "B"),
            int(params.value("a", 0)), int(params.value("l", 1)));
        out.lemma = "eleven";
        out.tag = "certificate";
        out.certificate = cert;
        out.verified = verify::certificate_ok(g, cert);
      } else if (lemma == "skb") {
        SkbOptions opt;
        if (params.contains("eta_ceiling"))
          opt.eta_ceiling = param_rat(params, "eta_ceiling");
        out = red_blue_structure_detector(
            g, param_rat(params, "alpha"), param_rat(params, "beta"),
            param_rat(params, "eta"), params.value("k", 1L), opt);
      } else if (lemma == "skbe") {
        out = balanced_two_colour_matching(
            g, param_rat(params, "eps"), params.value("k", 1L),
            params.contains("eps_ceiling") ? param_rat(params, "eps_ceiling")
                                           : rat(1));
      } else if (lemma == "largew") {
        out = three_colour_matching_check(
            g, param_rat(params, "alpha1"), param_rat(params, "alpha2"),
            param_rat(params, "alpha3"), param_rat(params, "eta"),
            params.value("k", 1L),
            params.contains("slack") ? param_rat(params, "slack") : rat(1));
      } else if (lemma == "hole") {
        out = hole_tolerant_matching(
            g, param_set(params, "W"), param_rat(params, "alpha"),
            param_rat(params, "beta"), param_rat(params, "v"),
            param_rat(params, "eta"), params.value("k", 1L),
            params.contains("slack") ? param_rat(params, "slack") : rat(1));
      }
      emit(out.to_json(), as_json,
           out.lemma + " -> " + out.tag +
               (out.verified ? " (verified)" : " (NOT verified)"));
      if (out.counterexample() || !out.verified) {
        std::ofstream art(artefact_path);
        art << out.to_json().dump(2) << "\n";
        return kExitCounterexample;
      }
      return kExitOk;
    }

    if (*cs) {
      auto g = ColouredGraph::from_json(load_json(cs_graph));
      Json cert = load_json(cs_cert);
      std::string cls = cert.value("class", "K");
      ValidationReport rep;
      if (cls == "H")
        rep = validate_H(g, HStructure::from_json(cert));
      else if (cls == "K")
        rep = validate_K(g, KStructure::from_json(cert));
      else if (cls == "K*")
        rep = validate_K_star(g, KStarStructure::from_json(cert));
      else
        throw Error("unknown structure class " + cls);
      emit(rep.to_json(), as_json, rep.valid ? "valid" : "INVALID");
      return rep.valid ? kExitOk : kExitCounterexample;
    }

    if (*certify) {
      auto g = ColouredGraph::from_json(load_json(cgraph));
      ScaledParams p;
      p.alpha1 = rat_parse(a1);
      p.alpha2 = rat_parse(a2);
      p.alpha3 = rat_parse(a3);
      p.eta = rat_parse(eta);
      p.k = ck;
      auto out = certify_stability(g, p, rat_parse(slack_s));
      Json j = out.to_json();
      auto check = verify_outcome(g, p, out);
      j["verified"] = check.ok;
      if (!outcome_path.empty()) {
        std::ofstream f(outcome_path);
        f << j.dump(2) << "\n";
      }
      std::ostringstream human;
      human << "outcome: " << tag_name(out.tag)
            << (check.ok ? " (verified)" : "");
      for (const auto& [stage, note] : out.transcript)
        human << "\n  [" << stage << "] " << note;
      emit(j, as_json, human.str());
      if (out.inconclusive()) return kExitCounterexample;
      return check.ok ? kExitOk : kExitCounterexample;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OddMatchingFound& e) {
    std::cerr << "counterexample payload produced\n";
    return kExitCounterexample;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCounterexample;
  }
  return kExitUsage;
}
