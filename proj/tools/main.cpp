// optrun: plan, verify, and inspect optimal surveillance runs.
//
// Subcommand summary:
//   plan        run the full pipeline on a mission file
//   verify      cross-check a plan (or a stored result) against the oracles
//   cycle       run the minimum S-bottleneck cycle search on a graph file
//   export-dot  write transition system / automaton / product as DOT

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "optrun/mission.hpp"
#include "optrun/optimal_run.hpp"
#include "optrun/oracle.hpp"

namespace {

using nlohmann::json;
using namespace optrun;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUnsatisfiable = 2;
constexpr int kExitVerifyMismatch = 3;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

Word word_of(const TransitionSystem& ts, const std::vector<std::string>& run) {
  Word w;
  for (const auto& q : run) w.push_back(ts.label(ts.state_index(q)));
  return w;
}

json result_json(const Mission& m, const PlanResult& r) {
  json j;
  j["ts"] = m.ts_path;
  j["formula"] = m.formula.to_string();
  j["formula_effective"] = r.effective_formula->to_string();
  j["optimize"] = m.optimize;
  j["pi"] = m.pi;
  j["conjoined_gf_pi"] = r.conjoined_gf_pi;
  j["satisfiable"] = r.satisfiable;
  j["stats"] = {{"ts_states", r.stats.ts_states},
                {"buchi_states", r.stats.buchi_states},
                {"product_states", r.stats.product_states},
                {"product_states_reachable", r.stats.product_states_reachable},
                {"accepting_states", r.stats.accepting_states},
                {"opt_states", r.stats.opt_states}};
  if (r.satisfiable) {
    const SuffixTiming timing = suffix_timing(m.ts, r.lasso.suffix, m.pi);
    j["cost"] = r.cost;
    j["anchor"] = r.lasso.anchor;
    j["prefix"] = r.lasso.prefix;
    j["suffix"] = r.lasso.suffix;
    j["product_anchor"] = r.product_anchor;
    j["product_prefix"] = r.product_prefix;
    j["product_suffix"] = r.product_suffix;
    j["pi_times"] = timing.pi_times;
    j["period"] = timing.period;
  } else {
    j["cost"] = nullptr;
  }
  return j;
}

void print_run(const char* name, const std::vector<std::string>& run) {
  std::cout << name << " (" << run.size() << "):";
  for (const auto& q : run) std::cout << ' ' << q;
  std::cout << "\n";
}

void print_plan_report(const Mission& m, const PlanResult& r) {
  std::cout << "formula: " << m.formula.to_string() << "\n";
  std::cout << "optimizing proposition: " << m.pi;
  if (m.optimize.size() > 1) {
    std::cout << " (";
    for (std::size_t i = 0; i < m.optimize.size(); ++i) {
      if (i) std::cout << " | ";
      std::cout << m.optimize[i];
    }
    std::cout << ")";
  }
  std::cout << "\n";
  std::cout << "transition system: " << r.stats.ts_states << " states, "
            << m.ts.num_transitions() << " transitions\n";
  std::cout << "buchi automaton: " << r.stats.buchi_states << " states\n";
  std::cout << "product automaton: " << r.stats.product_states << " states ("
            << r.stats.ts_states << " x " << r.stats.buchi_states << "), "
            << r.stats.product_states_reachable << " reachable\n";
  std::cout << "accepting / optimizing states (reachable): " << r.stats.accepting_states
            << " / " << r.stats.opt_states << "\n";
  std::cout << "stage times: translate " << fmt6(r.stats.translate_ms) << " ms, product "
            << fmt6(r.stats.product_ms) << " ms, cycle " << fmt6(r.stats.cycle_ms)
            << " ms, prefix " << fmt6(r.stats.prefix_ms) << " ms\n";
  if (!r.satisfiable) {
    std::cout << "result: unsatisfiable\n";
    return;
  }
  std::cout << "cost: " << fmt6(r.cost) << "\n";
  std::cout << "anchor: " << r.lasso.anchor << "\n";
  print_run("prefix", r.lasso.prefix);
  print_run("suffix", r.lasso.suffix);
  const SuffixTiming timing = suffix_timing(m.ts, r.lasso.suffix, m.pi);
  std::cout << "pi visits within one period at t =";
  for (std::size_t i = 0; i < timing.pi_times.size(); ++i) {
    std::cout << (i ? ", " : " ") << fmt6(timing.pi_times[i]);
  }
  std::cout << " (period " << fmt6(timing.period) << ")\n";
}

struct PlanFlags {
  std::string mission_path;
  std::string dot_buchi, dot_product, json_path;
  std::size_t max_buchi_states = 10000;
  bool quiet = false;
};

struct Planned {
  Mission mission;
  PlanResult result;
};

Planned run_plan_pipeline(const PlanFlags& flags) {
  Mission mission = load_mission(flags.mission_path);
  PlanOptions opts;
  opts.max_buchi_states = flags.max_buchi_states;
  PlanResult result = optimal_run(mission.ts, mission.formula, mission.pi, opts);
  if (result.conjoined_gf_pi && !flags.quiet) {
    std::cerr << "note: conjoined 'G F " << mission.pi
              << "' to the mission formula to enforce the optimization shape\n";
  }
  if (!flags.dot_buchi.empty() || !flags.dot_product.empty()) {
    const BuchiAutomaton b =
        translate(*result.effective_formula, mission.ts.propositions(), flags.max_buchi_states);
    if (!flags.dot_buchi.empty()) write_text_file(flags.dot_buchi, b.to_dot());
    if (!flags.dot_product.empty()) {
      const ProductAutomaton p =
          ProductAutomaton::build(mission.ts, b, mission.pi).reachable_part();
      write_text_file(flags.dot_product, p.to_dot());
    }
  }
  if (!flags.json_path.empty()) {
    write_text_file(flags.json_path, result_json(mission, result).dump(2) + "\n");
  }
  return Planned{std::move(mission), std::move(result)};
}

int cmd_plan(const PlanFlags& flags) {
  const Planned p = run_plan_pipeline(flags);
  if (!flags.quiet) print_plan_report(p.mission, p.result);
  if (!p.result.satisfiable) {
    if (flags.quiet) std::cerr << "unsatisfiable\n";
    return kExitUnsatisfiable;
  }
  return kExitOk;
}

struct VerifyFlags {
  PlanFlags plan;
  std::string result_path;
  std::size_t oracle_max_suffix = 8;
  std::size_t oracle_max_prefix = 6;
  bool skip_optimality = false;
};

int cmd_verify(const VerifyFlags& flags) {
  const Planned planned = run_plan_pipeline(flags.plan);
  const Mission& mission = planned.mission;
  const PlanResult& result = planned.result;
  bool all_ok = true;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok: " : "MISMATCH: ") << what << "\n";
    all_ok = all_ok && ok;
  };

  std::optional<RunLasso> lasso;
  std::optional<double> claimed_cost;
  if (!flags.result_path.empty()) {
    std::ifstream in(flags.result_path);
    if (!in) {
      std::cerr << "error: cannot read result file " << flags.result_path << "\n";
      return kExitInputError;
    }
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      std::cerr << "error: malformed result file: " << e.what() << "\n";
      return kExitInputError;
    }
    if (j.value("satisfiable", false)) {
      RunLasso l;
      l.prefix = j.at("prefix").get<std::vector<std::string>>();
      l.suffix = j.at("suffix").get<std::vector<std::string>>();
      l.anchor = j.at("anchor").get<std::string>();
      lasso = std::move(l);
      claimed_cost = j.at("cost").get<double>();
    }
    check(j.value("satisfiable", false) == result.satisfiable,
          "stored satisfiability matches a fresh plan");
  } else if (result.satisfiable) {
    lasso = result.lasso;
    claimed_cost = result.cost;
  }

  if (lasso) {
    double recomputed = kInfinity;
    bool valid = true;
    try {
      recomputed = run_cost(mission.ts, *lasso, mission.pi);
    } catch (const std::exception& e) {
      valid = false;
      check(false, std::string("lasso is a valid run (") + e.what() + ")");
    }
    if (valid) {
      check(recomputed == *claimed_cost, "stored cost equals recomputed run cost");
      check(recomputed == suffix_cost(mission.ts, lasso->suffix, mission.pi),
            "run cost equals suffix cost");
      const bool sat = oracle::lasso_satisfies(
          *result.effective_formula,
          {word_of(mission.ts, lasso->prefix), word_of(mission.ts, lasso->suffix)});
      check(sat, "lasso word satisfies the mission formula (oracle)");
    }
  } else {
    std::cout << "plan: unsatisfiable\n";
  }

  if (!flags.skip_optimality) {
    const std::size_t max_suffix =
        std::max(flags.oracle_max_suffix, lasso ? lasso->suffix.size() : 0);
    const std::size_t max_prefix =
        std::max(flags.oracle_max_prefix, lasso ? lasso->prefix.size() : 0);
    const double oracle_best = oracle::brute_optimal_cost(
        mission.ts, *result.effective_formula, mission.pi, max_suffix, max_prefix);
    const double planned = lasso ? *claimed_cost : kInfinity;
    check(oracle_best == planned, "cost equals the oracle optimum (suffix <= " +
                                      std::to_string(max_suffix) + " edges)");
  }
  return all_ok ? kExitOk : kExitVerifyMismatch;
}

std::set<Vertex> resolve_vertices(const WeightedDigraph& g, const std::string& csv,
                                  const char* what) {
  std::set<Vertex> out;
  std::istringstream is(csv);
  std::string name;
  while (std::getline(is, name, ',')) {
    if (name.empty()) continue;
    auto v = g.find(name);
    if (!v) {
      throw std::runtime_error(std::string(what) + " vertex '" + name +
                               "' is not in the graph");
    }
    out.insert(*v);
  }
  if (out.empty()) throw std::runtime_error(std::string(what) + " set is empty");
  return out;
}

int cmd_cycle(const std::string& graph_path, const std::string& s_csv,
              const std::string& f_csv, const std::string& json_path) {
  std::ifstream in(graph_path);
  if (!in) throw std::runtime_error("cannot read graph file: " + graph_path);
  std::ostringstream os;
  os << in.rdbuf();
  const WeightedDigraph g = WeightedDigraph::parse(os.str());
  const auto s_set = resolve_vertices(g, s_csv, "--s-set");
  const auto f_set = resolve_vertices(g, f_csv, "--f-set");
  const auto res = min_bottleneck_cycle(g, s_set, f_set);
  if (!res) {
    std::cout << "no cycle exists\n";
    return kExitUnsatisfiable;
  }
  std::cout << "s-bottleneck length: " << fmt6(res->length) << "\n";
  std::cout << "witness triple: f=" << g.id(res->f) << " s1=" << g.id(res->s1)
            << " s2=" << g.id(res->s2) << "\n";
  std::cout << "cycle:";
  for (auto v : res->cycle) std::cout << ' ' << g.id(v);
  std::cout << "\n";
  if (!json_path.empty()) {
    json j;
    j["length"] = res->length;
    j["f"] = g.id(res->f);
    j["s1"] = g.id(res->s1);
    j["s2"] = g.id(res->s2);
    std::vector<std::string> cyc;
    for (auto v : res->cycle) cyc.push_back(g.id(v));
    j["cycle"] = cyc;
    write_text_file(json_path, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_export_dot(const std::string& mission_path, const std::string& ts_path,
                   const std::string& buchi_path, const std::string& product_path,
                   bool reachable_only, std::size_t max_buchi_states) {
  const Mission mission = load_mission(mission_path);
  if (!ts_path.empty()) write_text_file(ts_path, mission.ts.to_dot());
  if (buchi_path.empty() && product_path.empty()) return kExitOk;

  const Formula effective = ensure_gf_pi(mission.formula, mission.pi);
  const BuchiAutomaton b = translate(effective, mission.ts.propositions(), max_buchi_states);
  if (!buchi_path.empty()) write_text_file(buchi_path, b.to_dot());
  if (!product_path.empty()) {
    ProductAutomaton p = ProductAutomaton::build(mission.ts, b, mission.pi);
    if (reachable_only) p = p.reachable_part();
    write_text_file(product_path, p.to_dot());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal surveillance-run planner over weighted transition systems"};
  app.require_subcommand(1);

  PlanFlags plan_flags;
  auto* plan = app.add_subcommand("plan", "plan an optimal run for a mission file");
  plan->add_option("mission", plan_flags.mission_path, "mission file")->required();
  plan->add_option("--dot-buchi", plan_flags.dot_buchi, "write the automaton as DOT");
  plan->add_option("--dot-product", plan_flags.dot_product,
                   "write the reachable product as DOT");
  plan->add_option("--json", plan_flags.json_path, "write the machine-readable result");
  plan->add_option("--max-buchi-states", plan_flags.max_buchi_states,
                   "abort translation beyond this many states")
      ->capture_default_str();
  plan->add_flag("--quiet", plan_flags.quiet, "suppress the report");

  VerifyFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "cross-check a plan against the oracles");
  verify->add_option("mission", verify_flags.plan.mission_path, "mission file")->required();
  verify->add_option("--result", verify_flags.result_path,
                     "verify a stored plan result instead of a fresh one");
  verify->add_option("--oracle-max-suffix", verify_flags.oracle_max_suffix,
                     "suffix edge budget for the optimality oracle")
      ->capture_default_str();
  verify->add_option("--oracle-max-prefix", verify_flags.oracle_max_prefix,
                     "prefix edge budget for the optimality oracle")
      ->capture_default_str();
  verify->add_flag("--skip-optimality", verify_flags.skip_optimality,
                   "skip the exhaustive optimality check");
  verify->add_option("--max-buchi-states", verify_flags.plan.max_buchi_states,
                     "abort translation beyond this many states")
      ->capture_default_str();

  std::string cycle_graph, cycle_s, cycle_f, cycle_json;
  auto* cycle = app.add_subcommand("cycle", "minimum S-bottleneck cycle on a graph file");
  cycle->add_option("graph", cycle_graph, "graph file")->required();
  cycle->add_option("--s-set", cycle_s, "comma-separated S vertices")->required();
  cycle->add_option("--f-set", cycle_f, "comma-separated F vertices")->required();
  cycle->add_option("--json", cycle_json, "write the cycle as JSON");

  std::string exp_mission, exp_ts, exp_buchi, exp_product;
  bool exp_reachable = false;
  std::size_t exp_max_buchi = 10000;
  auto* exp = app.add_subcommand("export-dot", "export DOT renderings for a mission");
  exp->add_option("mission", exp_mission, "mission file")->required();
  exp->add_option("--ts", exp_ts, "write the transition system as DOT");
  exp->add_option("--buchi", exp_buchi, "write the automaton as DOT");
  exp->add_option("--product", exp_product, "write the product as DOT");
  exp->add_flag("--reachable", exp_reachable, "restrict the product to reachable states");
  exp->add_option("--max-buchi-states", exp_max_buchi,
                  "abort translation beyond this many states")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(plan_flags);
    if (verify->parsed()) return cmd_verify(verify_flags);
    if (cycle->parsed()) return cmd_cycle(cycle_graph, cycle_s, cycle_f, cycle_json);
    if (exp->parsed()) {
      return cmd_export_dot(exp_mission, exp_ts, exp_buchi, exp_product, exp_reachable,
                            exp_max_buchi);
    }
  } catch (const TranslationLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
