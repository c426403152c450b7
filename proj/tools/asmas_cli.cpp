// Command-line driver: check, belief, synth, simulate, validate, dump-expanded, dump-sccs.

#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "asmas/bounded.hpp"
#include "asmas/error.hpp"
#include "asmas/io.hpp"
#include "asmas/pipeline.hpp"
#include "asmas/simulate.hpp"
#include "json.hpp"

using namespace asmas;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

std::string value_name(const Model& m, int agent, Step::Kind kind, int x) {
  const Agent& a = m.agents[agent];
  return kind == Step::Kind::Goal ? a.goal_set_name(x) : a.intentions[x];
}

std::string dist_text(const Model& m, int agent, Step::Kind kind, const Dist<int>& d) {
  std::string s = "{";
  bool first = true;
  for (auto& [x, p] : d) {
    s += (first ? "" : ", ") + value_name(m, agent, kind, x) + ":" + to_string(p);
    first = false;
  }
  return s + "}";
}

json dist_json(const Model& m, int agent, Step::Kind kind, const Dist<int>& d) {
  json o = json::object();
  for (auto& [x, p] : d) o[value_name(m, agent, kind, x)] = to_string(p);
  return o;
}

const char* kind_name(Step::Kind k) {
  switch (k) {
    case Step::Kind::Goal: return "goal";
    case Step::Kind::Intention: return "intention";
    case Step::Kind::Temporal: return "temporal";
  }
  return "?";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("io-error", "cannot write " + path);
  out << text;
}

std::string verdict_text(const Verdict& v) { return v.numeric ? to_string(v.value) : (v.truth ? "true" : "false"); }

json strategies_json(const Model& m, const std::vector<SynthesizedStrategies::Entry>& table) {
  json arr = json::array();
  for (auto& e : table)
    arr.push_back({{"agent", m.agents[e.agent].name},
                   {"kind", kind_name(e.kind)},
                   {"key", e.key},
                   {"path", path_id(m, e.sample)},
                   {"dist", dist_json(m, e.agent, e.kind, e.dist)},
                   {"source", e.source}});
  return arr;
}

json preferences_json(const Model& m, const std::vector<PreferenceEntry>& prefs) {
  json arr = json::array();
  for (auto& e : prefs)
    arr.push_back({{"holder", m.agents[e.holder].name},
                   {"over", m.agents[e.over].name},
                   {"kind", kind_name(e.kind)},
                   {"path", path_id(m, e.path)},
                   {"dist", dist_json(m, e.over, e.kind, e.dist)}});
  return arr;
}

void print_tables(std::ostream& os, const Model& m, const std::vector<SynthesizedStrategies::Entry>& table,
                  const std::vector<PreferenceEntry>& prefs) {
  os << "strategies: " << table.size() << "\n";
  for (auto& e : table)
    os << "  zeta^" << (e.kind == Step::Kind::Goal ? "g" : "i") << "_" << m.agents[e.agent].name << "("
       << path_id(m, e.sample) << ") = " << dist_text(m, e.agent, e.kind, e.dist) << " [" << e.source << "]\n";
  if (!prefs.empty()) {
    os << "updated preferences: " << prefs.size() << "\n";
    for (auto& e : prefs)
      os << "  pi^" << (e.kind == Step::Kind::Goal ? "g" : "i") << ",h_" << m.agents[e.holder].name << ","
         << m.agents[e.over].name << "(" << path_id(m, e.path) << ") = " << dist_text(m, e.over, e.kind, e.dist)
         << "\n";
  }
}

int agent_arg(const Model& m, const std::string& name) {
  auto a = m.find_agent(name);
  if (!a) throw Error("usage-error", "unknown agent '" + name + "'");
  return *a;
}

// ---------------------------------------------------------------- commands

struct CheckArgs {
  std::string model, formula, at, engine = "auto", mode = "path", dump_sccs, dump_expanded;
  bool json = false, value = false, timing = false, tables = false;
};

int cmd_check(const CheckArgs& a) {
  Model m = load_model_file(a.model);
  FormulaPtr phi = parse_formula(a.formula);
  if (a.value) phi = as_query(*phi);
  PipelineOptions opt;
  opt.engine = parse_engine(a.engine);
  if (!a.at.empty()) opt.at = parse_path(m, a.at);
  if (a.mode == "belief-state") opt.mode = BeliefMode::BeliefState;
  else if (a.mode != "path") throw Error("usage-error", "unknown belief mode '" + a.mode + "'");
  PipelineResult r = run_pipeline(m, *phi, opt);

  if (!a.dump_sccs.empty()) {
    if (!r.qualitative) throw Error("usage-error", "--dump-sccs needs the qualitative engine");
    write_file(a.dump_sccs, dump_sccs(m, *r.qualitative));
  }
  if (!a.dump_expanded.empty()) {
    ModelPreferences prefs(m);
    SynthesizedStrategies zeta(m);
    BoundedChecker bc(m, prefs, zeta);
    write_file(a.dump_expanded, bc.dump(static_cast<std::size_t>(r.horizon)));
  }

  if (a.json) {
    json out = {{"formula", to_string(*phi)},
                {"engine", engine_name(r.engine)},
                {"fragment", fragment_name(r.fragment)},
                {"horizon", r.horizon}};
    if (opt.at) out["at"] = path_id(m, *opt.at);
    if (r.verdict.numeric) out["value"] = to_string(r.verdict.value);
    else out["verdict"] = r.verdict.truth;
    if (r.qualitative) {
      json reach = json::object();
      for (auto& [s, p] : r.qualitative->reach) reach[m.states[s].id] = to_string(p);
      out["reach"] = reach;
      if (r.qualitative->witness) out["witness"] = m.states[*r.qualitative->witness].id;
    }
    out["warnings"] = r.warnings;
    out["strategies"] = strategies_json(m, r.strategies);
    out["preferences"] = preferences_json(m, r.preferences);
    if (a.timing) out["timing_ms"] = r.timing_ms;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "engine: " << engine_name(r.engine) << "\n"
              << "fragment: " << fragment_name(r.fragment) << "\n"
              << (r.verdict.numeric ? "value: " : "result: ") << verdict_text(r.verdict) << "\n";
    if (r.qualitative && r.qualitative->witness)
      std::cout << "witness: " << m.states[*r.qualitative->witness].id << "\n";
    for (auto& w : r.warnings) std::cout << "warning: " << w << "\n";
    if (a.tables) print_tables(std::cout, m, r.strategies, r.preferences);
    else std::cout << "strategies: " << r.strategies.size() << " entries\n";
    if (a.timing)
      for (auto& [k, v] : r.timing_ms) std::cout << "time." << k << ": " << v << " ms\n";
  }
  if (r.verdict.numeric) return kExitTrue;
  return r.verdict.truth ? kExitTrue : kExitFalse;
}

struct BeliefArgs {
  std::string model, agent, trace, path;
  std::size_t explore = 0;
  bool json = false, state = false;
};

int cmd_belief(const BeliefArgs& a) {
  Model m = load_model_file(a.model);
  m.require_clean();
  const int ag = agent_arg(m, a.agent);
  if (a.explore > 0) {
    BeliefAsmas bel = explore_belief_asmas(m, ag, a.explore);
    if (a.json) {
      json nodes = json::array(), edges = json::array();
      for (std::size_t i = 0; i < bel.nodes.size(); ++i) {
        json b = json::object();
        for (auto& [s, p] : bel.nodes[i])
          if (p != 0) b[m.states[s].id] = to_string(p);
        nodes.push_back({{"id", i}, {"level", bel.level[i]}, {"belief", b}});
      }
      for (auto& e : bel.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", m.type_name(e.kind)}, {"obs", e.obs},
                         {"prob", to_string(e.prob)}});
      std::cout << json({{"nodes", nodes}, {"edges", edges}, {"truncated", bel.truncated}}).dump(2) << "\n";
    } else {
      for (std::size_t i = 0; i < bel.nodes.size(); ++i)
        std::cout << "b" << i << " (level " << bel.level[i] << ") = " << to_string(m, bel.nodes[i]) << "\n";
      for (auto& e : bel.edges)
        std::cout << "b" << e.from << " --" << m.type_name(e.kind) << "/" << e.obs << "--> b" << e.to << " : "
                  << to_string(e.prob) << "\n";
      if (bel.truncated) std::cout << "truncated\n";
    }
    return kExitTrue;
  }
  if (a.trace.empty() == a.path.empty()) throw Error("usage-error", "give exactly one of --trace or --path");
  ObservationTrace o;
  FinitePath rho;
  if (!a.trace.empty()) {
    o = parse_trace(m, ag, a.trace);
  } else {
    rho = parse_path(m, a.path);
    if (!valid_path(m, rho)) throw ModelError("path " + to_string(m, rho) + " is not a valid path of the model");
    o = trace_of(m, ag, rho);
  }
  ModelPreferences prefs(m);
  if (a.state) {
    if (a.path.empty()) throw Error("usage-error", "--state needs --path");
    BeliefState b = belief_state_of(m, ag, rho);
    if (a.json) {
      json out = json::object();
      for (auto& [s, p] : b)
        if (p != 0) out[m.states[s].id] = to_string(p);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << to_string(m, b) << "\n";
    }
    return kExitTrue;
  }
  BeliefAssignment be = belief_assignment(m, prefs, o);
  if (a.json) {
    json out = json::object();
    for (auto& [p, v] : be.entries) out[path_id(m, p)] = to_string(v);
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& [p, v] : be.entries) std::cout << path_id(m, p) << ": " << to_string(v) << "\n";
  }
  return kExitTrue;
}

struct SynthArgs {
  std::string model, formula;
  int horizon = -1;
  bool json = false;
};

int cmd_synth(const SynthArgs& a) {
  Model m = load_model_file(a.model);
  m.require_clean();
  int h = a.horizon;
  if (!a.formula.empty()) {
    FormulaPtr phi = parse_formula(a.formula);
    if (classify_fragment(*phi) != Fragment::BPRTL)
      throw FragmentError("synthesis horizon needs a BPRTL formula: " + to_string(*phi));
    h = depth(*phi) + 1;
  }
  if (h < 1) throw Error("usage-error", "give --formula or a positive --horizon");
  SynthesizedStrategies zeta(m);
  UpdatedPreferences gamma(zeta);
  std::vector<PreferenceEntry> prefs;
  for (auto& p : initialized_paths(m, static_cast<std::size_t>(h)))
    for (std::size_t ag = 0; ag < m.num_agents(); ++ag) {
      const State& s = m.states[p.last()];
      const int ia = static_cast<int>(ag);
      if (!s.legal_goals[ag].empty()) zeta.goal(ia, p);
      if (!s.legal_intentions[ag].empty()) zeta.intention(ia, p);
      if (!gamma.nontrivial()) continue;
      for (std::size_t b = 0; b < m.num_agents(); ++b) {
        if (b == ag) continue;
        const int ib = static_cast<int>(b);
        if (!s.legal_goals[b].empty()) prefs.push_back({ia, ib, Step::Kind::Goal, p, gamma.goal(ia, ib, p)});
        if (!s.legal_intentions[b].empty())
          prefs.push_back({ia, ib, Step::Kind::Intention, p, gamma.intention(ia, ib, p)});
      }
    }
  if (a.json) {
    json out = {{"horizon", h},
                {"strategies", strategies_json(m, zeta.table())},
                {"preferences", preferences_json(m, prefs)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "horizon: " << h << "\n";
    print_tables(std::cout, m, zeta.table(), prefs);
  }
  return kExitTrue;
}

struct SimArgs {
  std::string model, agent;
  std::uint64_t seed = 1;
  std::size_t steps = 8, runs = 1;
  bool json = false;
};

int cmd_simulate(const SimArgs& a) {
  Model m = load_model_file(a.model);
  m.require_clean();
  SynthesizedStrategies zeta(m);
  std::mt19937_64 rng(a.seed);
  if (a.runs > 1) {
    std::map<std::string, std::size_t> freq;
    std::map<std::string, Rational> exact;
    for (std::size_t i = 0; i < a.runs; ++i) {
      FinitePath p = simulate_path(m, zeta, rng, a.steps);
      std::string key = to_string(m, p, true);
      if (freq[key]++ == 0) exact[key] = execution_probability(m, zeta, p);
    }
    if (a.json) {
      json arr = json::array();
      for (auto& [k, c] : freq) arr.push_back({{"path", k}, {"count", c}, {"exact", to_string(exact[k])}});
      std::cout << json({{"runs", a.runs}, {"seed", a.seed}, {"paths", arr}}).dump(2) << "\n";
    } else {
      for (auto& [k, c] : freq) std::cout << c << "\t" << to_string(exact[k]) << "\t" << k << "\n";
    }
    return kExitTrue;
  }
  FinitePath p = simulate_path(m, zeta, rng, a.steps);
  std::optional<int> ag;
  if (!a.agent.empty()) ag = agent_arg(m, a.agent);
  json steps = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    FinitePath pre = p.prefix(i + 1);
    json row = {{"state", m.states[p.states[i]].id}};
    if (i > 0) row["step"] = m.step_name(p.steps[i - 1]);
    std::string belief;
    if (ag) {
      BeliefState b = belief_state_of(m, *ag, pre);
      belief = to_string(m, b);
      row["belief"] = belief;
    }
    if (a.json) {
      steps.push_back(row);
    } else {
      if (i > 0) std::cout << "  --" << m.step_name(p.steps[i - 1]) << "-> ";
      std::cout << m.states[p.states[i]].id;
      if (ag) std::cout << "  " << belief;
      std::cout << "\n";
    }
  }
  if (a.json)
    std::cout << json({{"seed", a.seed}, {"path", to_string(m, p, true)}, {"steps", steps}}).dump(2) << "\n";
  return kExitTrue;
}

int cmd_validate(const std::string& path, bool as_json) {
  Model m = load_model_file(path);
  const ValidationReport& rep = m.report();
  if (as_json) {
    json v = json::array();
    for (auto& x : rep.violations) v.push_back({{"code", x.code}, {"message", x.message}});
    std::cout << json({{"model", m.name},
                       {"states", m.size()},
                       {"clean", rep.clean()},
                       {"violations", v},
                       {"warnings", rep.warnings}})
                     .dump(2)
              << "\n";
  } else {
    std::cout << "model: " << m.name << " (" << m.size() << " states)\n";
    for (auto& x : rep.violations) std::cout << "violation: " << x.code << ": " << x.message << "\n";
    for (auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
    std::cout << (rep.clean() ? "clean" : "invalid") << "\n";
  }
  return rep.clean() ? kExitTrue : kExitFalse;
}

int cmd_dump_expanded(const std::string& path, const std::string& formula, int levels) {
  Model m = load_model_file(path);
  m.require_clean();
  if (!formula.empty()) {
    FormulaPtr phi = parse_formula(formula);
    if (classify_fragment(*phi) != Fragment::BPRTL)
      throw FragmentError("the expanded system needs a BPRTL formula: " + to_string(*phi));
    levels = depth(*phi) + 1;
  }
  if (levels < 0) throw Error("usage-error", "give --formula or --levels");
  ModelPreferences prefs(m);
  SynthesizedStrategies zeta(m);
  BoundedChecker bc(m, prefs, zeta);
  std::cout << bc.dump(static_cast<std::size_t>(levels));
  return kExitTrue;
}

int cmd_dump_sccs(const std::string& path, const std::string& formula) {
  Model m = load_model_file(path);
  m.require_clean();
  FormulaPtr phi = parse_formula(formula);
  SynthesizedStrategies zeta(m);
  QualitativeResult r = check_qualitative(m, *phi, zeta);
  std::cout << dump_sccs(m, r) << "result: " << (r.verdict ? "true" : "false") << "\n";
  return r.verdict ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for autonomous stochastic multi-agent systems with trust"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "check a formula on a model (exit 0 true, 1 false, 2 error)");
  check->add_option("model", ca.model, "model file")->required();
  check->add_option("formula", ca.formula, "formula")->required();
  check->add_option("--at", ca.at, "context path, e.g. \"s0 s2 s5 s12\"");
  check->add_option("--engine", ca.engine, "auto, bounded, qualitative or direct");
  check->add_option("--mode", ca.mode, "belief mode of the direct evaluator: path or belief-state");
  check->add_option("--dump-sccs", ca.dump_sccs, "write the classified SCC list to a file");
  check->add_option("--dump-expanded", ca.dump_expanded, "write the expanded system to a file");
  check->add_flag("--json", ca.json, "machine-readable output");
  check->add_flag("--value", ca.value, "report the value of the top-level threshold operator");
  check->add_flag("--timing", ca.timing, "report per-stage timing");
  check->add_flag("--tables", ca.tables, "print synthesized strategies and updated preferences");

  BeliefArgs ba;
  auto* bel = app.add_subcommand("belief", "belief of an agent given an observation trace or a path");
  bel->add_option("model", ba.model, "model file")->required();
  bel->add_option("--agent", ba.agent, "observer")->required();
  bel->add_option("--trace", ba.trace, "e.g. \"o(s0) Alice.g o(s1)\"");
  bel->add_option("--path", ba.path, "path whose trace is used");
  bel->add_option("--explore", ba.explore, "explore the belief system to this depth");
  bel->add_flag("--state", ba.state, "belief state instead of path beliefs (needs --path)");
  bel->add_flag("--json", ba.json, "machine-readable output");

  SynthArgs sa;
  auto* syn = app.add_subcommand("synth", "synthesized cognitive strategies and updated preferences");
  syn->add_option("model", sa.model, "model file")->required();
  syn->add_option("--formula", sa.formula, "take the horizon d(phi)+1 from a formula");
  syn->add_option("--horizon", sa.horizon, "path length bound");
  syn->add_flag("--json", sa.json, "machine-readable output");

  SimArgs ma;
  auto* sim = app.add_subcommand("simulate", "sample paths under the induced dynamics and strategies");
  sim->add_option("model", ma.model, "model file")->required();
  sim->add_option("--seed", ma.seed, "random seed");
  sim->add_option("--steps", ma.steps, "moves per run");
  sim->add_option("--runs", ma.runs, "number of runs; more than one prints path frequencies");
  sim->add_option("--agent", ma.agent, "report this agent's online belief");
  sim->add_flag("--json", ma.json, "machine-readable output");

  std::string vpath;
  bool vjson = false;
  auto* val = app.add_subcommand("validate", "load and validate a model (exit 1 on violations)");
  val->add_option("model", vpath, "model file")->required();
  val->add_flag("--json", vjson, "machine-readable output");

  std::string epath, eformula;
  int elevels = -1;
  auto* exp = app.add_subcommand("dump-expanded", "print the expanded system");
  exp->add_option("model", epath, "model file")->required();
  exp->add_option("--formula", eformula, "take the depth from a formula");
  exp->add_option("--levels", elevels, "number of levels");

  std::string spath, sformula;
  auto* scc = app.add_subcommand("dump-sccs", "print the classified SCCs of the qualitative product");
  scc->add_option("model", spath, "model file")->required();
  scc->add_option("formula", sformula, "formula G (psi => P~q [ F X>=1 [ psi ] ])")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage-error: " << e.what() << "\n";
    return kExitError;
  }
  try {
    if (*check) return cmd_check(ca);
    if (*bel) return cmd_belief(ba);
    if (*syn) return cmd_synth(sa);
    if (*sim) return cmd_simulate(ma);
    if (*val) return cmd_validate(vpath, vjson);
    if (*exp) return cmd_dump_expanded(epath, eformula, elevels);
    if (*scc) return cmd_dump_sccs(spath, sformula);
  } catch (const Error& e) {
    std::string msg = e.what();
    for (char& c : msg)
      if (c == '\n') c = ' ';
    std::cerr << "error: " << e.kind() << ": " << msg << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: internal-error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
