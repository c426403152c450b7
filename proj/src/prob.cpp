#include "asmas/prob.hpp"

#include <deque>
#include <map>

#include "asmas/error.hpp"

namespace asmas {

Dist<int> UniformStrategies::goal(int agent, const FinitePath& p) {
  Dist<int> d;
  auto& legal = m_.states[p.last()].legal_goals[agent];
  for (int x : legal) d[x] = Rational(1, legal.size());
  return d;
}

Dist<int> UniformStrategies::intention(int agent, const FinitePath& p) {
  Dist<int> d;
  auto& legal = m_.states[p.last()].legal_intentions[agent];
  for (int x : legal) d[x] = Rational(1, legal.size());
  return d;
}

namespace {

Rational lookup(const Dist<int>& d, int x) {
  auto it = d.find(x);
  return it == d.end() ? Rational(0) : it->second;
}

}  // namespace

Rational aux_transition(const Model& m, const PreferenceProvider& prefs, int observer, const FinitePath& prefix,
                        const Step& step, StateIdx to) {
  StateIdx s = prefix.last();
  switch (step.kind) {
    case Step::Kind::Temporal:
      if (!m.valid_step(s, step, to))
        throw ModelError("undefined temporal transition from " + m.states[s].id + " to " + m.states[to].id);
      return m.chain_prob(s, to);
    case Step::Kind::Goal:
      if (step.agent == observer) return 1;
      return lookup(prefs.goal(observer, step.agent, prefix), step.value);
    case Step::Kind::Intention:
      if (step.agent == observer) return 1;
      return lookup(prefs.intention(observer, step.agent, prefix), step.value);
  }
  return 0;
}

Rational path_probability(const Model& m, const PreferenceProvider& prefs, int observer, const FinitePath& rho,
                          bool cross_type, StrategyProvider* strategies) {
  if (!valid_path(m, rho)) throw ModelError("invalid path " + to_string(m, rho));
  Rational p = m.initial_prob(rho.states[0]);
  for (size_t i = 0; i + 1 < rho.size() && p != 0; ++i) {
    const Step& st = rho.steps[i];
    FinitePath pre = rho.prefix(i + 1);
    if (cross_type && st.cognitive() && st.agent == observer && strategies &&
        strategies->weighted(observer, st.kind)) {
      auto d = st.kind == Step::Kind::Goal ? strategies->goal(observer, pre) : strategies->intention(observer, pre);
      p *= lookup(d, st.value);
    } else {
      p *= aux_transition(m, prefs, observer, pre, st, rho.states[i + 1]);
    }
  }
  return p;
}

namespace {

bool holds_at(const Model& m, const FinitePath& full, size_t pos, const Formula& f, const StateEval& ev) {
  if (is_state(f)) return ev(full.prefix(pos + 1), f);
  switch (f.op) {
    case Op::Not: return !holds_at(m, full, pos, f.kid(), ev);
    case Op::And: return holds_at(m, full, pos, f.kid(0), ev) && holds_at(m, full, pos, f.kid(1), ev);
    case Op::Or: return holds_at(m, full, pos, f.kid(0), ev) || holds_at(m, full, pos, f.kid(1), ev);
    case Op::Implies: return !holds_at(m, full, pos, f.kid(0), ev) || holds_at(m, full, pos, f.kid(1), ev);
    case Op::Next: return holds_at(m, full, pos + 1, f.kid(), ev);
    case Op::BUntil:
      for (int i = 0; i <= f.k; ++i) {
        if (holds_at(m, full, pos + i, f.kid(1), ev)) return true;
        if (!holds_at(m, full, pos + i, f.kid(0), ev)) return false;
      }
      return false;
    case Op::BEventually:
      for (int i = 0; i <= f.k; ++i)
        if (holds_at(m, full, pos + i, f.kid(), ev)) return true;
      return false;
    case Op::BAlways:
      for (int i = 0; i <= f.k; ++i)
        if (!holds_at(m, full, pos + i, f.kid(), ev)) return false;
      return true;
    default:
      throw EvalError("unsupported-formula", "unbounded operator nested in a bounded path formula: " + to_string(f));
  }
}

Rational enumerate(const Model& m, const FinitePath& p, size_t pos, size_t remaining, const Formula& f,
                   const StateEval& ev) {
  if (remaining == 0) return holds_at(m, p, pos, f, ev) ? 1 : 0;
  Rational sum = 0;
  for (auto& [t, q] : m.chain_row(p.last())) sum += q * enumerate(m, p.extended(Step::temporal(), t), pos, remaining - 1, f, ev);
  return sum;
}

// ψ1 U≤k ψ2 over state formulas with pruning.
Rational bounded_until(const Model& m, const FinitePath& p, const Formula* safe, const Formula& goal, int k,
                       const StateEval& ev) {
  if (ev(p, goal)) return 1;
  if (k == 0 || (safe && !ev(p, *safe))) return 0;
  Rational sum = 0;
  for (auto& [t, q] : m.chain_row(p.last()))
    sum += q * bounded_until(m, p.extended(Step::temporal(), t), safe, goal, k - 1, ev);
  return sum;
}

Rational bounded_always(const Model& m, const FinitePath& p, const Formula& f, int k, const StateEval& ev) {
  if (!ev(p, f)) return 0;
  if (k == 0) return 1;
  Rational sum = 0;
  for (auto& [t, q] : m.chain_row(p.last())) sum += q * bounded_always(m, p.extended(Step::temporal(), t), f, k - 1, ev);
  return sum;
}

// Operands may be negated in place (flags) so no temporary formulas reach `ev`.
Rational unbounded(const Model& m, StateIdx start, const Formula* safe, bool neg_safe, const Formula& goal,
                   bool neg_goal, const StateEval& ev) {
  std::map<StateIdx, size_t> local;
  std::vector<StateIdx> order;
  std::deque<StateIdx> q{start};
  local[start] = 0;
  order.push_back(start);
  while (!q.empty()) {
    StateIdx s = q.front();
    q.pop_front();
    for (auto& [t, p] : m.chain_row(s))
      if (local.emplace(t, order.size()).second) {
        order.push_back(t);
        q.push_back(t);
      }
  }
  const size_t n = order.size();
  SparseRows rows(n);
  std::vector<bool> sf(n), tg(n);
  for (size_t i = 0; i < n; ++i) {
    for (auto& [t, p] : m.chain_row(order[i])) rows[i].push_back({local[t], p});
    FinitePath single(order[i]);
    tg[i] = ev(single, goal) != neg_goal;
    sf[i] = safe ? ev(single, *safe) != neg_safe : true;
  }
  return solve_until(rows, sf, tg)[0];
}

}  // namespace

Rational prob_path_formula(const Model& m, const FinitePath& rho, const Formula& psi, const StateEval& ev) {
  if (is_state(psi)) return ev(rho, psi) ? 1 : 0;
  if (psi.op == Op::Not) return 1 - prob_path_formula(m, rho, psi.kid(), ev);
  auto all_state = [&] {
    for (auto& k : psi.kids)
      if (!is_state(*k)) return false;
    return true;
  }();
  if (bounded(psi)) {
    if (all_state) {
      switch (psi.op) {
        case Op::Next: {
          Rational sum = 0;
          for (auto& [t, q] : m.chain_row(rho.last()))
            if (ev(rho.extended(Step::temporal(), t), psi.kid())) sum += q;
          return sum;
        }
        case Op::BUntil: return bounded_until(m, rho, &psi.kid(0), psi.kid(1), psi.k, ev);
        case Op::BEventually: return bounded_until(m, rho, nullptr, psi.kid(), psi.k, ev);
        case Op::BAlways: return bounded_always(m, rho, psi.kid(), psi.k, ev);
        default: break;
      }
    }
    return enumerate(m, rho, rho.size() - 1, static_cast<size_t>(horizon(psi)), psi, ev);
  }
  bool free = all_state;
  for (auto& k : psi.kids) free = free && history_free(*k);
  if (!free)
    throw EvalError("unsupported-formula", "unbounded path formula needs history-free state operands: " + to_string(psi));
  switch (psi.op) {
    case Op::Until: return unbounded(m, rho.last(), &psi.kid(0), false, psi.kid(1), false, ev);
    case Op::Eventually: return unbounded(m, rho.last(), nullptr, false, psi.kid(), false, ev);
    case Op::Always: return 1 - unbounded(m, rho.last(), nullptr, false, psi.kid(), true, ev);
    case Op::Release: return 1 - unbounded(m, rho.last(), &psi.kid(0), true, psi.kid(1), true, ev);
    default:
      throw EvalError("unsupported-formula", "cannot evaluate path formula " + to_string(psi));
  }
}

}  // namespace asmas
