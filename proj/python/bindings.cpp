// Python bindings for the planning pipeline and its building blocks.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "optrun/buchi.hpp"
#include "optrun/graph.hpp"
#include "optrun/ltl.hpp"
#include "optrun/mission.hpp"
#include "optrun/optimal_run.hpp"
#include "optrun/oracle.hpp"
#include "optrun/product.hpp"
#include "optrun/ts.hpp"

namespace py = pybind11;
using namespace optrun;

namespace {

oracle::LassoWord make_lasso(Word prefix, Word cycle) {
  return oracle::LassoWord{std::move(prefix), std::move(cycle)};
}

std::set<Vertex> resolve_set(const WeightedDigraph& g,
                             const std::vector<std::string>& names) {
  std::set<Vertex> out;
  for (const auto& n : names) {
    auto v = g.find(n);
    if (!v) throw std::invalid_argument("unknown vertex '" + n + "'");
    out.insert(*v);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "LTL surveillance-run planning over weighted transition systems";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<TranslationLimitError>(m, "TranslationLimitError",
                                                PyExc_RuntimeError);

  py::class_<Formula>(m, "Formula")
      .def_static("parse", &parse_ltl, py::arg("text"))
      .def("to_nnf", [](const Formula& f) { return to_nnf(f); })
      .def("atoms", [](const Formula& f) { return atoms_of(f); })
      .def("__str__", &Formula::to_string)
      .def("__repr__",
           [](const Formula& f) { return "Formula(\"" + f.to_string() + "\")"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", [](const Formula& f) { return std::hash<std::string>{}(f.to_string()); });

  m.def("parse_ltl", &parse_ltl, py::arg("text"));
  m.def("to_nnf", &to_nnf, py::arg("formula"));
  m.def("atoms_of", &atoms_of, py::arg("formula"));

  py::class_<BuchiAutomaton>(m, "BuchiAutomaton")
      .def_property_readonly("num_states", &BuchiAutomaton::num_states)
      .def_property_readonly("initial_states", &BuchiAutomaton::initial_states)
      .def_property_readonly("accepting_states", &BuchiAutomaton::accepting_states)
      .def_property_readonly("alphabet", &BuchiAutomaton::alphabet)
      .def("accepts_lasso",
           [](const BuchiAutomaton& b, const Word& prefix, const Word& cycle) {
             return accepts_lasso(b, prefix, cycle);
           },
           py::arg("prefix"), py::arg("cycle"))
      .def("to_dot", &BuchiAutomaton::to_dot);

  m.def("translate",
        [](const Formula& f, std::optional<std::set<std::string>> alphabet,
           std::size_t max_states) {
          return alphabet ? translate(f, std::move(*alphabet), max_states)
                          : translate(f, atoms_of(f), max_states);
        },
        py::arg("formula"), py::arg("alphabet") = std::nullopt,
        py::arg("max_states") = 10000);

  py::class_<TransitionSystem>(m, "TransitionSystem")
      .def_static("parse", &TransitionSystem::parse, py::arg("text"))
      .def_property_readonly("num_states", &TransitionSystem::num_states)
      .def_property_readonly("num_transitions", &TransitionSystem::num_transitions)
      .def_property_readonly("propositions", &TransitionSystem::propositions)
      .def_property_readonly("states",
                             [](const TransitionSystem& ts) {
                               std::vector<std::string> out;
                               for (std::size_t q = 0; q < ts.num_states(); ++q) {
                                 out.push_back(ts.state_name(static_cast<std::uint32_t>(q)));
                               }
                               return out;
                             })
      .def_property_readonly("initial_state",
                             [](const TransitionSystem& ts) {
                               return ts.state_name(ts.initial_state());
                             })
      .def("label",
           [](const TransitionSystem& ts, const std::string& state) {
             return ts.label(ts.state_index(state));
           },
           py::arg("state"))
      .def("with_extra_label", &TransitionSystem::with_extra_label, py::arg("prop"),
           py::arg("when_any_of"))
      .def("print", &TransitionSystem::print)
      .def("to_dot", &TransitionSystem::to_dot);

  m.def("run_word", &run_word, py::arg("ts"), py::arg("run"),
        py::arg("system_run") = false);
  m.def("run_times", &run_times, py::arg("ts"), py::arg("run"));

  py::class_<ProductAutomaton>(m, "ProductAutomaton")
      .def_property_readonly("num_states", &ProductAutomaton::num_states)
      .def_property_readonly("num_transitions", &ProductAutomaton::num_transitions)
      .def_property_readonly("num_accepting",
                             [](const ProductAutomaton& p) {
                               return p.accepting_list().size();
                             })
      .def_property_readonly("num_opt",
                             [](const ProductAutomaton& p) { return p.opt_list().size(); })
      .def("reachable_part", &ProductAutomaton::reachable_part)
      .def("state_ids",
           [](const ProductAutomaton& p) {
             std::vector<std::string> out;
             for (std::size_t i = 0; i < p.num_states(); ++i) {
               out.push_back(p.state_id(static_cast<std::uint32_t>(i)));
             }
             return out;
           })
      .def("to_dot", &ProductAutomaton::to_dot);

  m.def("build_product", &ProductAutomaton::build, py::arg("ts"), py::arg("buchi"),
        py::arg("pi"));

  py::class_<WeightedDigraph>(m, "WeightedDigraph")
      .def(py::init<>())
      .def_static("parse", &WeightedDigraph::parse, py::arg("text"))
      .def_property_readonly("num_vertices", &WeightedDigraph::num_vertices)
      .def_property_readonly("num_edges", &WeightedDigraph::num_edges)
      .def("add_edge",
           [](WeightedDigraph& g, const std::string& src, const std::string& dst,
              double w) { g.add_edge(g.intern(src), g.intern(dst), w); },
           py::arg("src"), py::arg("dst"), py::arg("weight"));

  py::class_<CycleResult>(m, "CycleResult")
      .def_readonly("length", &CycleResult::length)
      .def_property_readonly("cycle", [](const CycleResult& c) { return c.cycle; });

  m.def("min_bottleneck_cycle",
        [](const WeightedDigraph& g, const std::vector<std::string>& s_set,
           const std::vector<std::string>& f_set)
            -> std::optional<py::tuple> {
          auto res = min_bottleneck_cycle(g, resolve_set(g, s_set), resolve_set(g, f_set));
          if (!res) return std::nullopt;
          std::vector<std::string> cyc;
          for (auto v : res->cycle) cyc.push_back(g.id(v));
          return py::make_tuple(cyc, res->length,
                                py::make_tuple(g.id(res->f), g.id(res->s1), g.id(res->s2)));
        },
        py::arg("graph"), py::arg("s_set"), py::arg("f_set"),
        "Returns (cycle, length, (f, s1, s2)) or None when no cycle exists.");

  m.def("s_bottleneck_length",
        [](const WeightedDigraph& g, const std::vector<std::string>& cycle,
           const std::vector<std::string>& s_set) {
          std::vector<Vertex> cyc;
          for (const auto& n : cycle) {
            auto v = g.find(n);
            if (!v) throw std::invalid_argument("unknown vertex '" + n + "'");
            cyc.push_back(*v);
          }
          return s_bottleneck_length(g, cyc, resolve_set(g, s_set));
        },
        py::arg("graph"), py::arg("cycle"), py::arg("s_set"));

  py::class_<RunLasso>(m, "RunLasso")
      .def(py::init([](std::vector<std::string> prefix, std::vector<std::string> suffix) {
             RunLasso l;
             l.prefix = std::move(prefix);
             l.suffix = std::move(suffix);
             l.anchor = l.suffix.empty() ? std::string{} : l.suffix.front();
             return l;
           }),
           py::arg("prefix"), py::arg("suffix"))
      .def_readonly("prefix", &RunLasso::prefix)
      .def_readonly("suffix", &RunLasso::suffix)
      .def_readonly("anchor", &RunLasso::anchor);

  py::class_<PlanStats>(m, "PlanStats")
      .def_readonly("ts_states", &PlanStats::ts_states)
      .def_readonly("buchi_states", &PlanStats::buchi_states)
      .def_readonly("product_states", &PlanStats::product_states)
      .def_readonly("product_states_reachable", &PlanStats::product_states_reachable)
      .def_readonly("accepting_states", &PlanStats::accepting_states)
      .def_readonly("opt_states", &PlanStats::opt_states);

  py::class_<PlanResult>(m, "PlanResult")
      .def_readonly("satisfiable", &PlanResult::satisfiable)
      .def_readonly("lasso", &PlanResult::lasso)
      .def_readonly("cost", &PlanResult::cost)
      .def_readonly("conjoined_gf_pi", &PlanResult::conjoined_gf_pi)
      .def_readonly("stats", &PlanResult::stats)
      .def_property_readonly("effective_formula",
                             [](const PlanResult& r) { return r.effective_formula; });

  m.def("optimal_run",
        [](const TransitionSystem& ts, const Formula& phi, const std::string& pi,
           std::size_t max_buchi_states) {
          PlanOptions opts;
          opts.max_buchi_states = max_buchi_states;
          return optimal_run(ts, phi, pi, opts);
        },
        py::arg("ts"), py::arg("formula"), py::arg("pi"),
        py::arg("max_buchi_states") = 10000);
  m.def("suffix_cost", &suffix_cost, py::arg("ts"), py::arg("suffix"), py::arg("pi"));
  m.def("run_cost", &run_cost, py::arg("ts"), py::arg("lasso"), py::arg("pi"));

  py::class_<Mission>(m, "Mission")
      .def_readonly("ts", &Mission::ts)
      .def_readonly("formula", &Mission::formula)
      .def_readonly("pi", &Mission::pi)
      .def_readonly("optimize", &Mission::optimize)
      .def_readonly("ts_path", &Mission::ts_path);

  m.def("load_mission",
        [](const std::filesystem::path& p) { return load_mission(p); },
        py::arg("path"));

  m.def("lasso_satisfies",
        [](const Formula& f, const Word& prefix, const Word& cycle) {
          return oracle::lasso_satisfies(f, make_lasso(prefix, cycle));
        },
        py::arg("formula"), py::arg("prefix"), py::arg("cycle"));
  m.def("brute_min_s_bottleneck",
        [](const WeightedDigraph& g, const std::vector<std::string>& s_set,
           const std::vector<std::string>& f_set, std::size_t max_edges) {
          return oracle::brute_min_s_bottleneck(g, resolve_set(g, s_set),
                                                resolve_set(g, f_set), max_edges);
        },
        py::arg("graph"), py::arg("s_set"), py::arg("f_set"), py::arg("max_edges"));
  m.def("brute_optimal_cost", &oracle::brute_optimal_cost, py::arg("ts"),
        py::arg("formula"), py::arg("pi"), py::arg("max_suffix_edges"),
        py::arg("max_prefix_edges"));

#ifdef OPTRUN_VERSION
  m.attr("__version__") = OPTRUN_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
