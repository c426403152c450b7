#include "asmas/pipeline.hpp"

#include <chrono>

#include "asmas/bounded.hpp"
#include "asmas/error.hpp"

namespace asmas {

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Auto: return "auto";
    case Engine::Bounded: return "bounded";
    case Engine::Qualitative: return "qualitative";
    case Engine::Direct: return "direct";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  for (Engine e : {Engine::Auto, Engine::Bounded, Engine::Qualitative, Engine::Direct})
    if (name == engine_name(e)) return e;
  throw Error("usage-error", "unknown engine '" + name + "'");
}

Engine select_engine(const Formula& phi, Engine requested, bool has_context) {
  const Fragment fr = classify_fragment(phi);
  switch (requested) {
    case Engine::Direct: return Engine::Direct;
    case Engine::Bounded:
      if (fr != Fragment::BPRTL) throw FragmentError("the bounded checker needs a BPRTL formula: " + to_string(phi));
      return Engine::Bounded;
    case Engine::Qualitative:
      if (fr != Fragment::PQRTL1)
        throw FragmentError("the qualitative checker needs a PQRTL1 formula: " + to_string(phi));
      if (has_context) throw FragmentError("the qualitative checker works on the model, not at a path");
      return Engine::Qualitative;
    case Engine::Auto: break;
  }
  if (fr == Fragment::BPRTL) return Engine::Bounded;
  if (fr == Fragment::PQRTL1 && !has_context) return Engine::Qualitative;
  throw FragmentError("model checking this formula is undecidable in general (neither BPRTL nor PQRTL1); "
                      "use --engine direct for path-level evaluation: " + to_string(phi));
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Verdict all_initial(const Model& m, const Formula& phi, const std::function<Verdict(const FinitePath&)>& at) {
  std::vector<StateIdx> init;
  for (auto& [s, p] : m.initial)
    if (p > 0) init.push_back(s);
  if (phi.query) {
    if (init.size() != 1)
      throw EvalError("unsupported-formula", "a query needs a single initial state: " + to_string(phi));
    return at(FinitePath(init[0]));
  }
  for (StateIdx s : init)
    if (!at(FinitePath(s)).truth) return Verdict::boolean(false);
  return Verdict::boolean(true);
}

}  // namespace

PipelineResult run_pipeline(const Model& m, const Formula& phi, const PipelineOptions& opt) {
  m.require_clean();
  PipelineResult r;
  r.fragment = classify_fragment(phi);
  r.engine = select_engine(phi, opt.engine, opt.at.has_value());
  if (opt.at && !valid_path(m, *opt.at))
    throw ModelError("path " + to_string(m, *opt.at) + " is not a valid path of the model");

  // step 1: pro-attitude synthesis over the relevant horizon
  auto t0 = Clock::now();
  SynthesizedStrategies zeta(m, opt.mode);
  if (r.fragment == Fragment::BPRTL) {
    r.horizon = depth(phi) + 1 + static_cast<int>(opt.at ? opt.at->size() - 1 : 0);
  } else {
    r.horizon = 1 + static_cast<int>(opt.at ? opt.at->size() - 1 : 0);
    r.warnings.push_back("formula is not bounded; strategies are synthesized on demand beyond the initial states");
  }
  std::vector<FinitePath> paths = initialized_paths(m, static_cast<std::size_t>(r.horizon));
  for (auto& p : paths)
    for (std::size_t a = 0; a < m.num_agents(); ++a) {
      const State& s = m.states[p.last()];
      if (!s.legal_goals[a].empty()) zeta.goal(static_cast<int>(a), p);
      if (!s.legal_intentions[a].empty()) zeta.intention(static_cast<int>(a), p);
    }
  r.timing_ms["synthesis"] = ms_since(t0);

  // step 2: preference update
  t0 = Clock::now();
  UpdatedPreferences gamma(zeta);
  if (gamma.nontrivial())
    for (auto& p : paths)
      for (std::size_t a = 0; a < m.num_agents(); ++a)
        for (std::size_t b = 0; b < m.num_agents(); ++b) {
          if (a == b) continue;
          const State& s = m.states[p.last()];
          const int ia = static_cast<int>(a), ib = static_cast<int>(b);
          if (!s.legal_goals[b].empty())
            r.preferences.push_back({ia, ib, Step::Kind::Goal, p, gamma.goal(ia, ib, p)});
          if (!s.legal_intentions[b].empty())
            r.preferences.push_back({ia, ib, Step::Kind::Intention, p, gamma.intention(ia, ib, p)});
        }
  r.timing_ms["update"] = ms_since(t0);

  // step 3: model checking
  t0 = Clock::now();
  switch (r.engine) {
    case Engine::Bounded: {
      BoundedChecker bc(m, gamma, zeta);
      r.verdict = opt.at ? bc.check_at(*opt.at, phi) : bc.check(phi);
      break;
    }
    case Engine::Direct: {
      const bool model_prefs = !gamma.nontrivial();
      if (opt.mode == BeliefMode::BeliefState && !model_prefs)
        throw EvalError("unsupported-formula", "belief-state mode needs state-defined preferences");
      ModelPreferences base(m);
      const PreferenceProvider& prefs = model_prefs ? static_cast<const PreferenceProvider&>(base) : gamma;
      Evaluator ev(m, prefs, zeta, opt.mode, model_prefs);
      auto at = [&](const FinitePath& p) { return ev.eval(p, phi); };
      r.verdict = opt.at ? at(*opt.at) : all_initial(m, phi, at);
      break;
    }
    case Engine::Qualitative: {
      if (gamma.nontrivial())
        r.warnings.push_back("the qualitative checker uses state-defined preferences; cross-agent guards are ignored");
      r.qualitative = check_qualitative(m, phi, zeta);
      r.verdict = Verdict::boolean(r.qualitative->verdict);
      for (auto& w : r.qualitative->warnings) r.warnings.push_back(w);
      break;
    }
    case Engine::Auto: break;
  }
  r.timing_ms["check"] = ms_since(t0);
  r.strategies = zeta.table();
  return r;
}

FormulaPtr as_query(const Formula& phi) {
  switch (phi.op) {
    case Op::Prob:
    case Op::Bel:
    case Op::CT:
    case Op::DT: {
      auto f = std::make_shared<Formula>(phi);
      f->query = true;
      if (phi.op == Op::Prob || phi.op == Op::Bel) f->cmp = Cmp::Eq;
      return f;
    }
    default:
      throw Error("usage-error", "--value needs a top-level P, B, CT or DT operator: " + to_string(phi));
  }
}

}  // namespace asmas
