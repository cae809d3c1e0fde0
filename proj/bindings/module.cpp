#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ramsey/certifier.hpp"
#include "ramsey/search.hpp"

namespace py = pybind11;
using namespace ramsey;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

Json py_to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    Json arr = Json::array();
    for (const auto& item : obj) arr.push_back(py_to_json(item));
    return arr;
  }
  if (py::isinstance<py::dict>(obj)) {
    Json out = Json::object();
    for (auto item : obj.cast<py::dict>())
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    return out;
  }
  throw Error("unsupported python value in graph payload");
}

ColouredGraph graph_from_py(const py::handle& obj) {
  return ColouredGraph::from_json(py_to_json(obj));
}

Colour colour_arg(const std::string& name_) {
  auto c = colour_from_name(name_);
  if (!c) throw Error("unknown colour: " + name_);
  return *c;
}

ScaledParams params_from_py(const py::dict& d) {
  return ScaledParams::from_json(py_to_json(d));
}

}  // namespace

PYBIND11_MODULE(ramseykit, m) {
  m.doc() = "verification and search engine for three-multicoloured "
            "almost-complete graphs";

  py::register_exception<PreconditionError>(m, "PreconditionError");
  py::register_exception<BudgetError>(m, "BudgetError");

  m.def("build_graph", [](int n, const py::list& edges) {
    std::vector<EdgeSpec> specs;
    for (const auto& e : edges) {
      auto tup = e.cast<py::tuple>();
      ColourSet cs;
      for (const auto& cn : tup[2]) cs.add(colour_arg(cn.cast<std::string>()));
      specs.push_back({tup[0].cast<int>(), tup[1].cast<int>(), cs});
    }
    return json_to_py(ColouredGraph::build(n, specs).to_json());
  }, py::arg("n"), py::arg("edges"),
     "build and canonicalize a coloured graph; returns its json form");

  m.def("completeness_report", [](const py::handle& g) {
    auto rep = completeness_report(graph_from_py(g));
    py::dict out;
    out["min_degree"] = rep.min_degree;
    out["a_almost"] = rep.a_almost;
    out["fraction"] = rat_str(rep.fraction);
    return out;
  });

  m.def("mono_components", [](const py::handle& g, const std::string& colour) {
    auto comps = mono_components(graph_from_py(g), colour_arg(colour));
    py::list out;
    for (const auto& c : comps.components) {
      py::dict d;
      d["vertices"] = c.vertices.items();
      d["odd"] = c.odd;
      d["odd_cycle"] = c.odd_cycle ? py::object(py::cast(*c.odd_cycle))
                                   : py::object(py::none());
      out.append(d);
    }
    py::dict res;
    res["components"] = out;
    res["isolated"] = comps.isolated.items();
    return res;
  });

  m.def("floor_even", [](const std::string& x) {
    return floor_even(rat_parse(x));
  });
  m.def("floor_odd", [](const std::string& x) {
    return floor_odd(rat_parse(x));
  });
  m.def("ramsey_formula_A", &ramsey_formula_A, py::arg("n"), py::arg("m"),
        py::arg("l"));
  m.def("ramsey_formula_C", &ramsey_formula_C, py::arg("n"), py::arg("m"),
        py::arg("l"));
  m.def("threshold_c", [](const std::string& a1, const std::string& a2,
                          const std::string& a3) {
    return rat_str(threshold_c(rat_parse(a1), rat_parse(a2), rat_parse(a3)));
  });

  m.def("max_matching", [](const py::handle& g, const std::string& colour) {
    auto m_ = max_matching(graph_from_py(g), colour_arg(colour));
    return py::cast(m_.edges);
  });

  m.def("largest_connected_matching",
        [](const py::handle& g, const std::string& colour) {
          auto cert =
              largest_connected_matching(graph_from_py(g), colour_arg(colour));
          return json_to_py(cert.to_json());
        });

  m.def("largest_odd_connected_matching",
        [](const py::handle& g, const std::string& colour) {
          auto cert = largest_odd_connected_matching(graph_from_py(g),
                                                     colour_arg(colour));
          return json_to_py(cert.to_json());
        });

  m.def("verify_certificate", [](const py::handle& g, const py::dict& cert) {
    auto graph = graph_from_py(g);
    auto c = ConnectedMatchingCertificate::from_json(py_to_json(cert),
                                                     graph.size());
    return verify::certificate_violations(graph, c);
  });

  m.def("green_parity_decomposition", [](const py::handle& g, int m_) {
    return json_to_py(green_parity_decomposition(graph_from_py(g), m_)
                          .to_json());
  });
  m.def("green_xyw", [](const py::handle& g) {
    return json_to_py(green_xyw(graph_from_py(g)).to_json());
  });

  m.def("build_K", [](int x1, int x2, int x3) {
    return json_to_py(build_K(x1, x2, x3).to_json());
  });
  m.def("build_H", [](int x1, int x2, const std::string& g1,
                      const std::string& g2) {
    return json_to_py(build_H(x1, x2, colour_arg(g1), colour_arg(g2))
                          .to_json());
  });
  m.def("build_K_star", [](int x1, int x2, int y1, int y2) {
    return json_to_py(build_K_star(x1, x2, y1, y2).to_json());
  });

  m.def("validate_structure", [](const py::handle& g, const py::dict& cert) {
    auto graph = graph_from_py(g);
    Json j = py_to_json(cert);
    std::string cls = j.value("class", "K");
    ValidationReport rep;
    if (cls == "H")
      rep = validate_H(graph, HStructure::from_json(j));
    else if (cls == "K")
      rep = validate_K(graph, KStructure::from_json(j));
    else
      rep = validate_K_star(graph, KStarStructure::from_json(j));
    return json_to_py(rep.to_json());
  });

  m.def("find_mono_cycle", [](const py::handle& g, const std::string& colour,
                              int length, bool exact, std::uint64_t budget) {
    CycleQuery q{colour_arg(colour), length,
                 exact ? CycleQuery::Mode::ExactLength
                       : CycleQuery::Mode::AtLeast};
    auto res = find_mono_cycle(graph_from_py(g), q, budget);
    py::dict out;
    out["cycle"] = res.cycle ? py::object(py::cast(*res.cycle))
                             : py::object(py::none());
    out["budget_exceeded"] = res.budget_exceeded;
    out["steps"] = res.steps;
    return out;
  }, py::arg("graph"), py::arg("colour"), py::arg("length"),
     py::arg("exact") = true, py::arg("budget") = kDefaultCycleBudget);

  m.def("construct_lower_bound", [](const std::string& pattern, long n, long m_,
                                    long l) {
    auto p = pattern_from_name(pattern);
    if (!p) throw Error("unknown pattern " + pattern);
    return json_to_py(construct_lower_bound(*p, n, m_, l).to_json());
  });

  m.def("ramsey_search", [](const std::vector<int>& lengths, int n,
                            std::uint64_t budget, int threads) {
    SearchTargets t{lengths};
    return json_to_py(ramsey_search(t, n, budget, 0, threads).to_json());
  }, py::arg("lengths"), py::arg("n"), py::arg("budget") = 50'000'000ULL,
     py::arg("threads") = 1);

  m.def("certify_stability", [](const py::handle& g, const py::dict& params,
                                const std::string& slack) {
    auto graph = graph_from_py(g);
    auto p = params_from_py(params);
    auto out = certify_stability(graph, p, rat_parse(slack));
    Json j = out.to_json();
    j["verified"] = verify_outcome(graph, p, out).ok;
    return json_to_py(j);
  }, py::arg("graph"), py::arg("params"), py::arg("slack") = "1");

  m.def("verify_outcome", [](const py::handle& g, const py::dict& params,
                             const py::dict& outcome_json) {
    // Re-validation from serialized form covers the payload classes the
    // python side can construct: matchings and the structure classes.
    auto graph = graph_from_py(g);
    auto p = params_from_py(params);
    StabilityOutcome out;
    Json j = py_to_json(outcome_json);
    std::string tag = j.value("tag", "inconclusive");
    for (auto t : {StabilityOutcome::Tag::RedMatching,
                   StabilityOutcome::Tag::BlueMatching,
                   StabilityOutcome::Tag::GreenOddMatching,
                   StabilityOutcome::Tag::DoubleH, StabilityOutcome::Tag::K,
                   StabilityOutcome::Tag::KStar,
                   StabilityOutcome::Tag::Inconclusive})
      if (tag == tag_name(t)) out.tag = t;
    if (j.contains("matching"))
      out.matching = ConnectedMatchingCertificate::from_json(j.at("matching"),
                                                             graph.size());
    if (j.contains("k_structure"))
      out.k_structure = KStructure::from_json(j.at("k_structure"));
    if (j.contains("k_star"))
      out.k_star = KStarStructure::from_json(j.at("k_star"));
    if (j.contains("double_h"))
      out.double_h = std::make_pair(
          HStructure::from_json(j.at("double_h").at(0)),
          HStructure::from_json(j.at("double_h").at(1)));
    auto check = verify_outcome(graph, p, out);
    py::dict res;
    res["ok"] = check.ok;
    res["violations"] = check.violations;
    return res;
  });
}
