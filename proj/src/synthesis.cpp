#include "asmas/synthesis.hpp"

#include "asmas/error.hpp"

namespace asmas {

bool state_dependent_guard(const Formula& g) {
  switch (g.op) {
    case Op::Atom: return true;
    case Op::Bel:
    case Op::CT:
    case Op::DT:
    case Op::ST:
    case Op::STQ:
    case Op::WT: return false;
    default:
      for (auto& k : g.kids)
        if (state_dependent_guard(*k)) return true;
      return false;
  }
}

namespace {

bool table_state_dependent(const GuardTable& t, bool goal) {
  if (goal) {
    for (auto& [x, g] : t.goal)
      if (state_dependent_guard(*g)) return true;
  } else {
    for (auto& [x, g] : t.intention)
      if (state_dependent_guard(*g)) return true;
  }
  return false;
}

const Dist<int>* declared(const Model& m, int agent, Step::Kind kind, const FinitePath& p) {
  auto& all = kind == Step::Kind::Goal ? m.declared_goal_strategies : m.declared_intention_strategies;
  if (static_cast<std::size_t>(agent) >= all.size()) return nullptr;
  for (auto& d : all[agent])
    if (!d.path.empty() && d.path == p.states) return &d.dist;
  for (auto& d : all[agent])
    if (d.path.empty() && d.state && *d.state == p.last()) return &d.dist;
  return nullptr;
}

bool has_declared(const Model& m, int agent, Step::Kind kind) {
  auto& all = kind == Step::Kind::Goal ? m.declared_goal_strategies : m.declared_intention_strategies;
  return static_cast<std::size_t>(agent) < all.size() && !all[agent].empty();
}

const char* kind_name(Step::Kind k) { return k == Step::Kind::Goal ? "goal" : "intention"; }

}  // namespace

SynthesizedStrategies::SynthesizedStrategies(const Model& m, BeliefMode mode) : m_(m), prefs_(m) {
  ev_ = std::make_unique<Evaluator>(m, prefs_, *this, mode, true);
  label_goal_.assign(m.num_agents(), false);
  label_intention_.assign(m.num_agents(), false);
  for (std::size_t a = 0; a < m.num_agents() && a < m.guards.size(); ++a) {
    label_goal_[a] = table_state_dependent(m.guards[a], true);
    label_intention_[a] = table_state_dependent(m.guards[a], false);
  }
}

bool SynthesizedStrategies::weighted(int agent, Step::Kind kind) const {
  if (has_declared(m_, agent, kind)) return true;
  if (static_cast<std::size_t>(agent) >= m_.guards.size()) return false;
  auto& t = m_.guards[agent];
  return kind == Step::Kind::Goal ? t.has_goal : t.has_intention;
}

Rational SynthesizedStrategies::eval_guard(const Formula& g, const FinitePath& p) {
  Verdict v = ev_->eval(p, g);
  if (v.numeric) return v.value;
  return v.truth ? 1 : 0;
}

Rational SynthesizedStrategies::eval_goal(int agent, int goal_set, const FinitePath& p) {
  auto& legal = m_.states[p.last()].legal_goals[agent];
  if (std::find(legal.begin(), legal.end(), goal_set) == legal.end()) return 0;
  if (static_cast<std::size_t>(agent) >= m_.guards.size()) return 0;
  auto& t = m_.guards[agent].goal;
  auto it = t.find(goal_set);
  return it == t.end() ? Rational(0) : eval_guard(*it->second, p);
}

Rational SynthesizedStrategies::eval_intention(int agent, int intention, const FinitePath& p) {
  const State& s = m_.states[p.last()];
  auto& legal = s.legal_intentions[agent];
  if (std::find(legal.begin(), legal.end(), intention) == legal.end()) return 0;
  if (static_cast<std::size_t>(agent) >= m_.guards.size()) return 0;
  auto& t = m_.guards[agent].intention;
  auto it = t.find({intention, s.goals[agent]});
  return it == t.end() ? Rational(0) : eval_guard(*it->second, p);
}

std::string SynthesizedStrategies::memo_key(int agent, Step::Kind kind, const FinitePath& p) const {
  std::string key = trace_key(m_, trace_of(m_, agent, p));
  bool by_label = kind == Step::Kind::Goal ? label_goal_[agent] : label_intention_[agent];
  if (by_label) {
    key += "|labels:";
    for (auto& l : m_.states[p.last()].labels) key += l + ",";
  }
  return key;
}

Dist<int> SynthesizedStrategies::goal(int agent, const FinitePath& p) { return compute(agent, Step::Kind::Goal, p); }

Dist<int> SynthesizedStrategies::intention(int agent, const FinitePath& p) {
  return compute(agent, Step::Kind::Intention, p);
}

Dist<int> SynthesizedStrategies::compute(int agent, Step::Kind kind, const FinitePath& p) {
  bool goal = kind == Step::Kind::Goal;
  if (const Dist<int>* d = declared(m_, agent, kind, p)) {
    auto k = std::make_tuple(agent, static_cast<int>(kind), "path:" + path_id(m_, p));
    if (!memo_.count(k)) memo_.emplace(k, Entry{agent, kind, std::get<2>(k), p, *d, "declared"});
    return *d;
  }
  bool guarded = static_cast<std::size_t>(agent) < m_.guards.size() &&
                 (goal ? m_.guards[agent].has_goal : m_.guards[agent].has_intention);
  const State& s = m_.states[p.last()];
  auto& legal = goal ? s.legal_goals[agent] : s.legal_intentions[agent];
  if (!guarded) {
    Dist<int> d;
    for (int x : legal) d[x] = Rational(1, legal.size());
    auto k = std::make_tuple(agent, static_cast<int>(kind), "state:" + s.id);
    if (!memo_.count(k)) memo_.emplace(k, Entry{agent, kind, std::get<2>(k), p, d, "uniform"});
    return d;
  }
  auto k = std::make_tuple(agent, static_cast<int>(kind), memo_key(agent, kind, p));
  if (auto it = memo_.find(k); it != memo_.end()) return it->second.dist;
  if (!active_.insert(k).second)
    throw EvalError("cyclic-guard", std::string(kind_name(kind)) + " guards of " + m_.agents[agent].name +
                                        " depend on themselves at " + to_string(m_, p));
  Dist<int> d;
  Rational sum = 0;
  try {
    for (int x : legal) {
      Rational v = goal ? eval_goal(agent, x, p) : eval_intention(agent, x, p);
      if (v < 0) throw EvalError("guard-range", "negative guard value for " + m_.agents[agent].name);
      d[x] = v;
      sum += v;
    }
  } catch (...) {
    active_.erase(k);
    throw;
  }
  active_.erase(k);
  if (!legal.empty() && sum == 0)
    throw EvalError("no-enabled-pro-attitude", "no " + std::string(kind_name(kind)) + " of " +
                                                   m_.agents[agent].name + " is enabled at " + to_string(m_, p));
  for (auto& [x, v] : d) v /= sum;
  memo_.emplace(k, Entry{agent, kind, std::get<2>(k), p, d, "guards"});
  return d;
}

std::vector<SynthesizedStrategies::Entry> SynthesizedStrategies::table() const {
  std::vector<Entry> out;
  for (auto& [k, e] : memo_) out.push_back(e);
  return out;
}

UpdatedPreferences::UpdatedPreferences(SynthesizedStrategies& guards) : g_(guards) {}

bool UpdatedPreferences::nontrivial() const {
  for (auto& row : g_.model().preference_guards)
    for (auto& t : row)
      if (t.present) return true;
  return false;
}

Dist<int> UpdatedPreferences::goal(int holder, int over, const FinitePath& p) const {
  return update(holder, over, true, p);
}

Dist<int> UpdatedPreferences::intention(int holder, int over, const FinitePath& p) const {
  return update(holder, over, false, p);
}

Dist<int> UpdatedPreferences::update(int holder, int over, bool goal, const FinitePath& p) const {
  const Model& m = g_.model();
  Dist<int> base = goal ? m.goal_preference(holder, over, p.last()) : m.intention_preference(holder, over, p.last());
  const GuardTable* t = nullptr;
  if (static_cast<std::size_t>(holder) < m.preference_guards.size() &&
      static_cast<std::size_t>(over) < m.preference_guards[holder].size())
    t = &m.preference_guards[holder][over];
  if (!t || !(goal ? t->has_goal : t->has_intention)) return base;
  auto key = std::make_tuple(holder, over, goal, p);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const State& s = m.states[p.last()];
  Dist<int> d;
  Rational sum = 0;
  for (auto& [x, px] : base) {
    if (px == 0) continue;
    Rational w = 0;
    if (goal) {
      if (auto it = t->goal.find(x); it != t->goal.end()) w = g_.eval_guard(*it->second, p);
    } else if (auto it = t->intention.find({x, s.goals[over]}); it != t->intention.end()) {
      w = g_.eval_guard(*it->second, p);
    }
    if (w == 0) continue;
    d[x] = px * w;
    sum += px * w;
  }
  if (sum == 0 && !base.empty())
    throw EvalError("preference-update-degenerate",
                    std::string(goal ? "goal" : "intention") + " preference of " + m.agents[holder].name + " over " +
                        m.agents[over].name + " vanishes at " + to_string(m, p));
  for (auto& [x, v] : d) v /= sum;
  memo_.emplace(key, d);
  return d;
}

}  // namespace asmas
