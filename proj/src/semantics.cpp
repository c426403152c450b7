#include "asmas/semantics.hpp"

#include <algorithm>

#include "asmas/error.hpp"

namespace asmas {

std::string Verdict::str() const { return numeric ? to_string(value) : (truth ? "true" : "false"); }

std::vector<int> support(const Dist<int>& d) {
  std::vector<int> out;
  for (auto& [x, p] : d)
    if (p > 0) out.push_back(x);
  return out;
}

Evaluator::Evaluator(const Model& m, const PreferenceProvider& prefs, StrategyProvider& strategies, BeliefMode mode,
                     bool model_prefs)
    : m_(m), prefs_(prefs), strat_(strategies), mode_(mode), model_prefs_(model_prefs) {}

void Evaluator::clear() {
  memo_.clear();
  prob_memo_.clear();
  classes_.clear();
  bstates_.clear();
}

int Evaluator::agent(const std::string& name) const {
  auto a = m_.find_agent(name);
  if (!a) throw EvalError("unknown-agent", "unknown agent '" + name + "'");
  return *a;
}

Verdict Evaluator::eval(const FinitePath& rho, const Formula& f) {
  auto key = std::make_pair(rho, to_string(f));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Verdict v = eval_uncached(rho, f);
  memo_.emplace(std::move(key), v);
  return v;
}

bool Evaluator::holds(const FinitePath& rho, const Formula& f) {
  Verdict v = eval(rho, f);
  if (v.numeric)
    throw EvalError("unsupported-formula", "quantitative formula used as a truth value: " + to_string(f));
  return v.truth;
}

Rational Evaluator::prob(const FinitePath& rho, const Formula& psi) {
  auto key = std::make_pair(rho, to_string(psi));
  if (auto it = prob_memo_.find(key); it != prob_memo_.end()) return it->second;
  StateEval ev = [this](const FinitePath& p, const Formula& g) { return holds(p, g); };
  Rational v = prob_path_formula(m_, rho, psi, ev);
  prob_memo_.emplace(std::move(key), v);
  return v;
}

const BeliefAssignment& Evaluator::class_of(int a, const FinitePath& rho) {
  auto t = trace_of(m_, a, rho);
  auto key = trace_key(m_, t);
  auto it = classes_.find(key);
  if (it == classes_.end()) it = classes_.emplace(key, belief_assignment(m_, prefs_, t)).first;
  return it->second;
}

const BeliefState& Evaluator::belief_state(int a, const FinitePath& rho) {
  if (!model_prefs_)
    throw EvalError("unsupported-combination", "belief-state mode needs the model's state-defined preferences");
  auto key = trace_key(m_, trace_of(m_, a, rho));
  auto it = bstates_.find(key);
  if (it == bstates_.end()) it = bstates_.emplace(key, belief_state_of(m_, a, rho)).first;
  return it->second;
}

namespace {

void require_history_free(const Formula& psi) {
  if (!history_free(psi))
    throw EvalError("unsupported-combination",
                    "belief-state mode needs a history-free argument: " + to_string(psi));
}

}  // namespace

Rational Evaluator::belief_value(const FinitePath& rho, int a, const Formula& psi) {
  Rational v = 0;
  if (mode_ == BeliefMode::BeliefState) {
    require_history_free(psi);
    for (auto& [s, w] : belief_state(a, rho))
      if (w > 0) v += w * prob(FinitePath(s), psi);
    return v;
  }
  for (auto& [p, w] : class_of(a, rho).entries) v += w * prob(p, psi);
  return v;
}

Rational Evaluator::intention_opt(const FinitePath& p, int b, const std::vector<int>& xs, bool sup,
                                  const Formula& psi, const char* empty_kind) {
  if (xs.empty())
    throw EvalError(empty_kind, std::string(empty_kind) + " for " + m_.agents[b].name + " at " +
                                   to_string(m_, p));
  std::optional<Rational> best;
  for (int x : xs) {
    auto t = m_.intention_target(p.last(), b, x);
    if (!t) throw ModelError("no target for " + m_.agents[b].name + ".i." + m_.agents[b].intentions[x]);
    Rational v = prob(p.extended(Step::intention(b, x), *t), psi);
    if (!best || (sup ? v > *best : v < *best)) best = v;
  }
  return *best;
}

Rational Evaluator::ct_value(const FinitePath& rho, int a, int b, Cmp c, const Formula& psi) {
  bool sup = upward(c);
  Rational v = 0;
  if (mode_ == BeliefMode::BeliefState) {
    require_history_free(psi);
    for (auto& [s, w] : belief_state(a, rho))
      if (w > 0) v += w * intention_opt(FinitePath(s), b, m_.states[s].legal_intentions[b], sup, psi,
                                        "no-legal-intention");
    return v;
  }
  for (auto& [p, w] : class_of(a, rho).entries)
    v += w * intention_opt(p, b, m_.states[p.last()].legal_intentions[b], sup, psi, "no-legal-intention");
  return v;
}

// ζ^i_B at state s of the belief support, taken from the class paths that end
// in s; all of them must agree.
Dist<int> Evaluator::dt_support(const FinitePath& rho, int a, int b, StateIdx s) {
  std::optional<Dist<int>> z;
  for (auto& [p, w] : class_of(a, rho).entries) {
    if (p.last() != s) continue;
    auto d = strat_.intention(b, p);
    if (z && *z != d)
      throw EvalError("unsupported-combination", "intention strategy of " + m_.agents[b].name +
                                                     " differs between paths ending in " + m_.states[s].id);
    z = std::move(d);
  }
  if (!z) throw EvalError("internal-error", "belief state and observation class disagree");
  return *z;
}

Rational Evaluator::dt_value(const FinitePath& rho, int a, int b, Cmp c, const Formula& psi) {
  bool sup = !upward(c);
  Rational v = 0;
  if (mode_ == BeliefMode::BeliefState) {
    require_history_free(psi);
    for (auto& [s, w] : belief_state(a, rho))
      if (w > 0)
        v += w * intention_opt(FinitePath(s), b, support(dt_support(rho, a, b, s)), sup, psi,
                               "no-possible-intention");
    return v;
  }
  for (auto& [p, w] : class_of(a, rho).entries)
    v += w * intention_opt(p, b, support(strat_.intention(b, p)), sup, psi, "no-possible-intention");
  return v;
}

std::pair<Rational, Rational> Evaluator::wt_sides(const FinitePath& rho, int a, int b, Cmp c, const Formula& psi) {
  Rational lhs = 0, rhs = 0;
  for (auto& [p, w] : class_of(a, rho).entries) {
    Rational side = 0;
    for (auto& [x, px] : prefs_.intention(a, b, p)) {
      if (px == 0) continue;
      auto t = m_.intention_target(p.last(), b, x);
      if (!t) throw ModelError("no target for " + m_.agents[b].name + ".i." + m_.agents[b].intentions[x]);
      side += px * prob(p.extended(Step::intention(b, x), *t), psi);
    }
    lhs += w * side;
    rhs += w * intention_opt(p, a, m_.states[p.last()].legal_intentions[a], upward(c), psi, "no-legal-intention");
  }
  return {lhs, rhs};
}

Verdict Evaluator::threshold(const Formula& f, const Rational& v) {
  if (f.query) return Verdict::number(v);
  return Verdict::boolean(compare(v, f.cmp, f.bound));
}

Verdict Evaluator::eval_uncached(const FinitePath& rho, const Formula& f) {
  const StateIdx s = rho.last();
  switch (f.op) {
    case Op::True: return Verdict::boolean(true);
    case Op::False: return Verdict::boolean(false);
    case Op::Atom: return Verdict::boolean(m_.label(s, f.atom));
    case Op::Not: return Verdict::boolean(!holds(rho, f.kid()));
    case Op::And: return Verdict::boolean(holds(rho, f.kid(0)) && holds(rho, f.kid(1)));
    case Op::Or: return Verdict::boolean(holds(rho, f.kid(0)) || holds(rho, f.kid(1)));
    case Op::Implies: return Verdict::boolean(!holds(rho, f.kid(0)) || holds(rho, f.kid(1)));
    case Op::Prob: return threshold(f, prob(rho, f.kid()));
    case Op::Forall: return Verdict::boolean(prob(rho, f.kid()) == 1);
    case Op::Exists: return Verdict::boolean(prob(rho, f.kid()) > 0);
    case Op::Goal: {
      int a = agent(f.agent1);
      for (int x : support(strat_.goal(a, rho))) {
        auto t = m_.goal_target(s, a, x);
        if (!t) throw ModelError("no target for " + m_.agents[a].name + ".g." + m_.agents[a].goal_set_name(x));
        if (!holds(rho.extended(Step::goal(a, x), *t), f.kid())) return Verdict::boolean(false);
      }
      return Verdict::boolean(true);
    }
    case Op::Intn:
    case Op::Cap: {
      int a = agent(f.agent1);
      bool cap = f.op == Op::Cap;
      auto xs = cap ? m_.states[s].legal_intentions[a] : support(strat_.intention(a, rho));
      for (int x : xs) {
        auto t = m_.intention_target(s, a, x);
        if (!t) throw ModelError("no target for " + m_.agents[a].name + ".i." + m_.agents[a].intentions[x]);
        bool h = holds(rho.extended(Step::intention(a, x), *t), f.kid());
        if (cap && h) return Verdict::boolean(true);
        if (!cap && !h) return Verdict::boolean(false);
      }
      return Verdict::boolean(!cap);
    }
    case Op::Bel: return threshold(f, belief_value(rho, agent(f.agent1), f.kid()));
    case Op::CT: return threshold(f, ct_value(rho, agent(f.agent1), agent(f.agent2), f.cmp, f.kid()));
    case Op::DT: return threshold(f, dt_value(rho, agent(f.agent1), agent(f.agent2), f.cmp, f.kid()));
    case Op::ST: {
      int a = agent(f.agent1), b = agent(f.agent2);
      bool bel = compare(belief_value(rho, a, f.kid()), f.cmp, f.bound);
      bool ct = compare(ct_value(rho, a, b, f.cmp, f.kid()), f.cmp, f.bound);
      return Verdict::boolean(bel != ct);
    }
    case Op::STQ: {
      // C_B ¬C_A φ ∧ C_B C_A φ
      int a = agent(f.agent1), b = agent(f.agent2);
      bool some_without = false, some_with = false;
      for (int x : m_.states[s].legal_intentions[b]) {
        auto t = m_.intention_target(s, b, x);
        if (!t) throw ModelError("no target for " + m_.agents[b].name + ".i." + m_.agents[b].intentions[x]);
        FinitePath p = rho.extended(Step::intention(b, x), *t);
        bool can = false;
        for (int y : m_.states[*t].legal_intentions[a]) {
          auto u = m_.intention_target(*t, a, y);
          if (!u) throw ModelError("no target for " + m_.agents[a].name + ".i." + m_.agents[a].intentions[y]);
          if (holds(p.extended(Step::intention(a, y), *u), f.kid())) {
            can = true;
            break;
          }
        }
        (can ? some_with : some_without) = true;
      }
      return Verdict::boolean(some_with && some_without);
    }
    case Op::WT: {
      auto [lhs, rhs] = wt_sides(rho, agent(f.agent1), agent(f.agent2), f.cmp, f.kid());
      return Verdict::boolean(compare(lhs, f.cmp, rhs));
    }
    default:
      // bare path formula at state level
      return Verdict::boolean(prob(rho, f) == 1);
  }
}

}  // namespace asmas
