#include "asmas/model.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "asmas/error.hpp"

namespace asmas {

// ---------------------------------------------------------------- Agent

int Agent::action_id(const std::string& a) const {
  auto it = std::find(actions.begin(), actions.end(), a);
  return it == actions.end() ? kNone : static_cast<int>(it - actions.begin());
}

int Agent::intention_id(const std::string& i) const {
  auto it = std::find(intentions.begin(), intentions.end(), i);
  return it == intentions.end() ? kNone : static_cast<int>(it - intentions.begin());
}

int Agent::find_goal_set(const std::vector<std::string>& gs) const {
  auto key = gs;
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  auto it = std::find(goal_sets.begin(), goal_sets.end(), key);
  return it == goal_sets.end() ? kNone : static_cast<int>(it - goal_sets.begin());
}

int Agent::intern_goal_set(std::vector<std::string> gs) {
  std::sort(gs.begin(), gs.end());
  gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
  for (auto& g : gs)
    if (std::find(goals.begin(), goals.end(), g) == goals.end())
      throw ModelError("goal '" + g + "' not in the goal universe of " + name);
  if (int id = find_goal_set(gs); id != kNone) return id;
  goal_sets.push_back(std::move(gs));
  return static_cast<int>(goal_sets.size() - 1);
}

std::string Agent::goal_set_name(int id) const {
  std::string s = "{";
  const auto& g = goal_sets.at(id);
  for (size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + g[i];
  return s + "}";
}

// ---------------------------------------------------------------- report

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(), [&](auto& v) { return v.code == code; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (auto& v : violations) os << v.code << ": " << v.message << "\n";
  return os.str();
}

// ---------------------------------------------------------------- lookup

std::size_t Model::non_sink_count() const {
  return std::count_if(states.begin(), states.end(), [](auto& s) { return !s.sink; });
}

StateIdx Model::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ModelError("unknown state '" + id + "'");
  return it->second;
}

std::optional<StateIdx> Model::find_state(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Model::agent_index(const std::string& n) const {
  if (auto a = find_agent(n)) return *a;
  throw ModelError("unknown agent '" + n + "'");
}

std::optional<int> Model::find_agent(const std::string& n) const {
  for (size_t i = 0; i < agents.size(); ++i)
    if (agents[i].name == n) return static_cast<int>(i);
  return std::nullopt;
}

Rational Model::initial_prob(StateIdx s) const {
  for (auto& [t, p] : initial)
    if (t == s) return p;
  return 0;
}

std::set<int> Model::available_actions(int agent, StateIdx s) const {
  std::set<int> out;
  for (auto& e : transitions[s]) out.insert(e.action[agent]);
  return out;
}

const LocalStrategy* Model::strategy_for(int agent, int intention) const {
  if (agent >= static_cast<int>(catalog.size())) return nullptr;
  auto it = catalog[agent].find(intention);
  return it == catalog[agent].end() ? nullptr : &it->second;
}

Dist<JointAction> Model::induced_joint_action(StateIdx s) const {
  const State& st = states[s];
  Dist<JointAction> joint{{JointAction{}, Rational(1)}};
  for (size_t a = 0; a < agents.size(); ++a) {
    auto acts = available_actions(static_cast<int>(a), s);
    Dist<int> local;
    if (acts.empty() || (acts.size() == 1 && *acts.begin() == 0)) {
      local[0] = 1;
    } else {
      const LocalStrategy* ls = strategy_for(static_cast<int>(a), st.intention[a]);
      const Dist<int>* d = nullptr;
      if (ls) {
        if (auto it = ls->by_state.find(st.id); it != ls->by_state.end()) d = &it->second;
        else if (auto jt = ls->by_obs.find(st.obs[a]); jt != ls->by_obs.end()) d = &jt->second;
        else if (ls->fallback) d = &*ls->fallback;
      }
      if (!d)
        throw ModelError("no action strategy for intention '" + agents[a].intentions[st.intention[a]] +
                         "' of " + agents[a].name + " at " + st.id);
      for (auto& [act, p] : *d)
        if (p > 0) local[act] = p;
    }
    Dist<JointAction> next;
    for (auto& [ja, p] : joint)
      for (auto& [act, q] : local) {
        auto j = ja;
        j.push_back(act);
        next[j] += p * q;
      }
    joint = std::move(next);
  }
  for (auto& [ja, p] : joint) {
    bool defined = std::any_of(transitions[s].begin(), transitions[s].end(),
                               [&](auto& e) { return e.action == ja; });
    if (!defined) {
      std::string n;
      for (size_t a = 0; a < ja.size(); ++a) n += (a ? "," : "") + agents[a].actions[ja[a]];
      throw ModelError("induced joint action (" + n + ") undefined at " + st.id);
    }
  }
  return joint;
}

const std::vector<std::pair<StateIdx, Rational>>& Model::chain_row(StateIdx s) const {
  if (!chain_error_[s].empty()) throw ModelError(chain_error_[s]);
  return chain_[s];
}

Rational Model::chain_prob(StateIdx s, StateIdx t) const {
  for (auto& [u, p] : chain_row(s))
    if (u == t) return p;
  return 0;
}

namespace {

std::string component_key(const State& s) {
  std::ostringstream os;
  for (auto& [k, v] : s.locals) os << k << '=' << v << ';';
  os << '|';
  for (int g : s.goals) os << g << ',';
  os << '|';
  for (int i : s.intention) os << i << ',';
  return os.str();
}

}  // namespace

std::optional<StateIdx> Model::goal_target(StateIdx s, int agent, int goal_set) const {
  for (auto& [st, t] : edges_[s])
    if (st.kind == Step::Kind::Goal && st.agent == agent && st.value == goal_set) return t;
  return std::nullopt;
}

std::optional<StateIdx> Model::intention_target(StateIdx s, int agent, int intention) const {
  for (auto& [st, t] : edges_[s])
    if (st.kind == Step::Kind::Intention && st.agent == agent && st.value == intention) return t;
  return std::nullopt;
}

std::optional<StateIdx> Model::step_target(StateIdx s, const Step& step) const {
  if (step.kind == Step::Kind::Goal) return goal_target(s, step.agent, step.value);
  if (step.kind == Step::Kind::Intention) return intention_target(s, step.agent, step.value);
  return std::nullopt;
}

bool Model::valid_step(StateIdx s, const Step& step, StateIdx t) const {
  if (s >= size() || t >= size()) return false;
  if (step.kind == Step::Kind::Temporal) {
    for (auto& e : transitions[s])
      for (auto& [u, p] : e.dist)
        if (u == t && p > 0) return true;
    return false;
  }
  auto tgt = step_target(s, step);
  return tgt && *tgt == t;
}

TransitionType Model::classify(int observer, StateIdx from, const Step& step, StateIdx to,
                               bool with_action) const {
  if (with_action && !valid_step(from, step, to))
    throw ModelError("invalid step " + step_name(step) + " from " + states[from].id + " to " +
                     (to < size() ? states[to].id : std::string("?")));
  TransitionType t;
  if (step.kind == Step::Kind::Temporal) {
    t.kind = TransitionType::Kind::Action;
    if (with_action && chain_error_[from].empty()) {
      std::vector<JointAction> hits;
      for (auto& [ja, p] : induced_joint_action(from))
        for (auto& e : transitions[from])
          if (e.action == ja)
            for (auto& [u, q] : e.dist)
              if (u == to && q > 0) hits.push_back(ja);
      if (hits.size() == 1) t.action = hits[0];
    }
    return t;
  }
  bool own = step.agent == observer;
  bool goal = step.kind == Step::Kind::Goal;
  t.agent = step.agent;
  if (own) {
    t.kind = goal ? TransitionType::Kind::OwnGoal : TransitionType::Kind::OwnIntention;
    t.value = step.value;
  } else {
    t.kind = goal ? TransitionType::Kind::OtherGoal : TransitionType::Kind::OtherIntention;
  }
  return t;
}

std::vector<Successor> Model::successors_of_type(int observer, StateIdx s, const TransitionType& t) const {
  std::vector<Successor> out;
  for (auto& sc : succ_[s])
    if (classify(observer, s, sc.step, sc.to, false) == t) out.push_back(sc);
  return out;
}

Dist<int> Model::goal_preference(int holder, int over, StateIdx s) const {
  if (holder < static_cast<int>(goal_prefs.size()) && over < static_cast<int>(goal_prefs[holder].size())) {
    auto& m = goal_prefs[holder][over];
    if (auto it = m.find(s); it != m.end()) return it->second;
  }
  Dist<int> d;
  auto& legal = states[s].legal_goals[over];
  for (int x : legal) d[x] = Rational(1, legal.size());
  return d;
}

Dist<int> Model::intention_preference(int holder, int over, StateIdx s) const {
  if (holder < static_cast<int>(intention_prefs.size()) &&
      over < static_cast<int>(intention_prefs[holder].size())) {
    auto& m = intention_prefs[holder][over];
    if (auto it = m.find(s); it != m.end()) return it->second;
  }
  Dist<int> d;
  auto& legal = states[s].legal_intentions[over];
  for (int x : legal) d[x] = Rational(1, legal.size());
  return d;
}

void Model::require_clean() const {
  if (!report_.clean())
    throw ModelError("model '" + name + "' failed validation: " + report_.violations.front().code + ": " +
                     report_.violations.front().message);
}

std::string Model::step_name(const Step& st) const {
  switch (st.kind) {
    case Step::Kind::Temporal: return "temporal";
    case Step::Kind::Goal: return agents[st.agent].name + ".g." + agents[st.agent].goal_set_name(st.value);
    case Step::Kind::Intention: return agents[st.agent].name + ".i." + agents[st.agent].intentions[st.value];
  }
  return "?";
}

std::string Model::type_name(const TransitionType& t) const {
  using K = TransitionType::Kind;
  switch (t.kind) {
    case K::Action: {
      if (t.action.empty()) return "action";
      std::string n = "action(";
      for (size_t a = 0; a < t.action.size(); ++a) n += (a ? "," : "") + agents[a].actions[t.action[a]];
      return n + ")";
    }
    case K::OwnGoal: return agents[t.agent].name + ".g." + agents[t.agent].goal_set_name(t.value);
    case K::OwnIntention: return agents[t.agent].name + ".i." + agents[t.agent].intentions[t.value];
    case K::OtherGoal: return agents[t.agent].name + ".g";
    case K::OtherIntention: return agents[t.agent].name + ".i";
  }
  return "?";
}

// ---------------------------------------------------------------- finalize

void Model::finalize() {
  if (finalized_) throw ModelError("model finalized twice");
  if (agents.empty()) throw ModelError("model has no agents");
  const size_t n = agents.size();
  index_.clear();
  for (size_t i = 0; i < states.size(); ++i) {
    auto& s = states[i];
    if (!index_.emplace(s.id, i).second) throw ModelError("duplicate state id '" + s.id + "'");
    s.goals.resize(n, 0);
    s.intention.resize(n, 0);
    s.legal_goals.resize(n);
    s.legal_intentions.resize(n);
    if (s.obs.size() != n) throw ModelError("state '" + s.id + "' lacks an observation for some agent");
    for (size_t a = 0; a < n; ++a) {
      if (!(s.enabled & kEnableGoal)) s.legal_goals[a].clear();
      if (!(s.enabled & kEnableIntention)) s.legal_intentions[a].clear();
      std::sort(s.legal_goals[a].begin(), s.legal_goals[a].end());
      std::sort(s.legal_intentions[a].begin(), s.legal_intentions[a].end());
    }
  }
  transitions.resize(states.size());
  catalog.resize(n);
  goal_prefs.resize(n, std::vector<std::map<StateIdx, Dist<int>>>(n));
  intention_prefs.resize(n, std::vector<std::map<StateIdx, Dist<int>>>(n));
  for (auto& v : goal_prefs) v.resize(n);
  for (auto& v : intention_prefs) v.resize(n);
  guards.resize(n);
  preference_guards.resize(n, std::vector<GuardTable>(n));
  for (auto& v : preference_guards) v.resize(n);
  declared_goal_strategies.resize(n);
  declared_intention_strategies.resize(n);
  complete_sink();
  compile_labels();
  build_edges();
  build_chain();
  build_successors();
  finalized_ = true;
  validate();
}

void Model::complete_sink() {
  std::vector<StateIdx> todo;
  for (size_t i = 0; i < states.size(); ++i)
    if (transitions[i].empty()) todo.push_back(i);
  if (todo.empty()) return;
  const size_t n = agents.size();
  StateIdx sk;
  if (auto it = index_.find(kSinkId); it != index_.end()) {
    sk = it->second;
  } else {
    State s;
    s.id = kSinkId;
    s.sink = true;
    s.goals.assign(n, 0);
    s.intention.assign(n, 0);
    s.legal_goals.resize(n);
    s.legal_intentions.resize(n);
    s.obs.assign(n, kSinkId);
    s.enabled = 0;
    sk = states.size();
    index_.emplace(s.id, sk);
    states.push_back(std::move(s));
    transitions.emplace_back();
  }
  sink_ = sk;
  JointAction silent(n, 0);
  for (StateIdx s : todo) {
    transitions[s].push_back({silent, {{sk, Rational(1)}}});
    if (s != sk) completed_.push_back(states[s].id);
  }
  if (transitions[sk].empty()) transitions[sk].push_back({silent, {{sk, Rational(1)}}});
}

void Model::compile_labels() {
  for (auto& s : states) {
    for (auto& [k, v] : s.locals)
      if (v != kSilent) s.labels.insert(k + "=" + v);
    for (size_t a = 0; a < agents.size(); ++a) {
      for (auto& g : agents[a].goal_sets[s.goals[a]]) s.labels.insert("goal." + agents[a].name + "=" + g);
      if (s.intention[a] != 0)
        s.labels.insert("intn." + agents[a].name + "=" + agents[a].intentions[s.intention[a]]);
    }
    propositions.insert(s.labels.begin(), s.labels.end());
  }
}

void Model::build_edges() {
  edges_.assign(states.size(), {});
  std::map<std::string, std::vector<StateIdx>> by_key;
  for (size_t i = 0; i < states.size(); ++i)
    if (!states[i].sink) by_key[component_key(states[i])].push_back(i);
  auto lookup = [&](const State& probe, const std::string& what) -> StateIdx {
    auto it = by_key.find(component_key(probe));
    if (it == by_key.end()) throw ModelError("no target state for " + what);
    if (it->second.size() > 1)
      throw ModelError("ambiguous target for " + what + ": " + states[it->second[0]].id + " and " +
                       states[it->second[1]].id);
    return it->second[0];
  };
  if (generate_cognitive_edges) {
    for (size_t i = 0; i < states.size(); ++i) {
      const State& s = states[i];
      for (size_t a = 0; a < agents.size(); ++a) {
        for (int x : s.legal_goals[a]) {
          State probe = s;
          probe.goals[a] = x;
          auto f = agents[a].intention_follows_goal.find(x);
          if (f != agents[a].intention_follows_goal.end()) probe.intention[a] = f->second;
          Step st = Step::goal(static_cast<int>(a), x);
          edges_[i].push_back({st, lookup(probe, step_name(st) + " at " + s.id)});
        }
        for (int x : s.legal_intentions[a]) {
          State probe = s;
          probe.intention[a] = x;
          Step st = Step::intention(static_cast<int>(a), x);
          edges_[i].push_back({st, lookup(probe, step_name(st) + " at " + s.id)});
        }
      }
    }
  }
  for (auto& [from, st, to] : declared_edges) {
    auto dup = std::find_if(edges_[from].begin(), edges_[from].end(), [&](auto& e) { return e.first == st; });
    if (dup != edges_[from].end()) {
      if (dup->second != to)
        throw ModelError("conflicting targets for " + step_name(st) + " at " + states[from].id);
      continue;
    }
    edges_[from].push_back({st, to});
  }
  for (auto& v : edges_)
    std::sort(v.begin(), v.end(), [&](auto& x, auto& y) {
      if (states[x.second].id != states[y.second].id) return states[x.second].id < states[y.second].id;
      return x.first < y.first;
    });
}

void Model::build_chain() {
  chain_.assign(states.size(), {});
  chain_error_.assign(states.size(), {});
  for (size_t s = 0; s < states.size(); ++s) {
    try {
      Dist<StateIdx> row;
      for (auto& [ja, p] : induced_joint_action(s))
        for (auto& e : transitions[s])
          if (e.action == ja)
            for (auto& [t, q] : e.dist) row[t] += p * q;
      for (auto& [t, p] : row)
        if (p > 0) chain_[s].push_back({t, p});
      std::sort(chain_[s].begin(), chain_[s].end(),
                [&](auto& x, auto& y) { return states[x.first].id < states[y.first].id; });
    } catch (const ModelError& e) {
      chain_error_[s] = e.what();
    }
  }
}

void Model::build_successors() {
  succ_.assign(states.size(), {});
  for (size_t s = 0; s < states.size(); ++s) {
    std::set<StateIdx> temporal;
    for (auto& e : transitions[s])
      for (auto& [t, p] : e.dist)
        if (p > 0) temporal.insert(t);
    for (StateIdx t : temporal) {
      Rational p = 0;
      if (chain_error_[s].empty())
        for (auto& [u, q] : chain_[s])
          if (u == t) p = q;
      succ_[s].push_back({t, Step::temporal(), p});
    }
    for (auto& [st, t] : edges_[s]) succ_[s].push_back({t, st, Rational(0)});
    std::sort(succ_[s].begin(), succ_[s].end(), [&](auto& x, auto& y) {
      if (states[x.to].id != states[y.to].id) return states[x.to].id < states[y.to].id;
      return x.step < y.step;
    });
  }
}

// ---------------------------------------------------------------- validation

namespace {

template <class T>
std::string join_ids(const std::vector<T>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

}  // namespace

void Model::validate() {
  auto& V = report_.violations;
  auto add = [&](std::string code, std::string msg) { V.push_back({std::move(code), std::move(msg)}); };
  const size_t n = agents.size();

  for (size_t s = 0; s < states.size(); ++s) {
    for (auto& e : transitions[s]) {
      std::string an;
      for (size_t a = 0; a < e.action.size(); ++a) an += (a ? "," : "") + agents[a].actions[e.action[a]];
      Rational sum = 0;
      for (auto& [t, p] : e.dist) {
        if (p < 0) add("negative-probability", "negative probability at (" + states[s].id + ",(" + an + "))");
        sum += p;
      }
      if (sum < 1)
        add("substochastic-distribution", "substochastic distribution at (" + states[s].id + ",(" + an +
                                              ")): sums to " + to_string(sum));
      else if (sum > 1)
        add("superstochastic-distribution", "distribution at (" + states[s].id + ",(" + an +
                                                ")) sums to " + to_string(sum));
    }
  }
  {
    Rational sum = 0;
    for (auto& [s, p] : initial) {
      if (p < 0) add("negative-probability", "negative initial probability at " + states[s].id);
      sum += p;
    }
    if (sum != 1) add("initial-distribution", "initial distribution sums to " + to_string(sum));
  }

  // cognitive edges
  for (size_t s = 0; s < states.size(); ++s) {
    for (auto& [st, t] : edges_[s]) {
      const State& a = states[s];
      const State& b = states[t];
      const int ag = st.agent;
      State expect = a;
      bool legal;
      if (st.kind == Step::Kind::Goal) {
        expect.goals[ag] = st.value;
        auto f = agents[ag].intention_follows_goal.find(st.value);
        if (f != agents[ag].intention_follows_goal.end()) expect.intention[ag] = f->second;
        legal = std::binary_search(a.legal_goals[ag].begin(), a.legal_goals[ag].end(), st.value);
      } else {
        expect.intention[ag] = st.value;
        legal = std::binary_search(a.legal_intentions[ag].begin(), a.legal_intentions[ag].end(), st.value);
      }
      if (!legal) add("cognitive-edge", step_name(st) + " is not legal at " + a.id);
      if (component_key(expect) != component_key(b))
        add("cognitive-edge", step_name(st) + " from " + a.id + " to " + b.id +
                                  " changes more than the replaced component");
    }
  }

  // preferences
  for (size_t h = 0; h < n; ++h)
    for (size_t o = 0; o < n; ++o) {
      for (int kind = 0; kind < 2; ++kind) {
        auto& table = kind == 0 ? goal_prefs[h][o] : intention_prefs[h][o];
        for (auto& [s, d] : table) {
          std::string what = std::string(kind == 0 ? "goal" : "intention") + " preference of " +
                             agents[h].name + " over " + agents[o].name + " at " + states[s].id;
          if (h == o) add("preference-support", what + ": holder equals subject");
          if (total(d) != 1) add("preference-normalization", what + " sums to " + to_string(total(d)));
          auto& legal = kind == 0 ? states[s].legal_goals[o] : states[s].legal_intentions[o];
          for (auto& [x, p] : d)
            if (p > 0 && !std::binary_search(legal.begin(), legal.end(), x))
              add("preference-support", what + " puts mass on an illegal change");
        }
      }
    }

  // action strategies
  for (size_t a = 0; a < n; ++a)
    for (auto& [intn, ls] : catalog[a]) {
      auto check = [&](const Dist<int>& d, const std::string& where) {
        if (total(d) != 1)
          add("action-strategy", "strategy for intention '" + agents[a].intentions[intn] + "' of " +
                                     agents[a].name + " (" + where + ") sums to " + to_string(total(d)));
        bool dirac = std::count_if(d.begin(), d.end(), [](auto& kv) { return kv.second > 0; }) == 1;
        if (strict_deterministic && !dirac)
          add("strict-dirac", "strategy for intention '" + agents[a].intentions[intn] + "' of " +
                                  agents[a].name + " (" + where + ") is not Dirac");
      };
      for (auto& [k, d] : ls.by_state) check(d, "state " + k);
      for (auto& [k, d] : ls.by_obs) check(d, "observation " + k);
      if (ls.fallback) check(*ls.fallback, "default");
    }
  for (size_t s = 0; s < states.size(); ++s) {
    if (!chain_error_[s].empty()) {
      add(chain_error_[s].rfind("no action strategy", 0) == 0 ? "action-strategy-missing" : "induced-joint-action",
          chain_error_[s]);
      continue;
    }
    for (size_t a = 0; a < n; ++a) {
      auto acts = available_actions(static_cast<int>(a), s);
      if (acts.size() == 1 && *acts.begin() == 0) continue;
      Dist<int> marg;
      for (auto& [ja, p] : induced_joint_action(s)) marg[ja[a]] += p;
      for (auto& [x, p] : marg)
        if (p > 0 && !acts.count(x))
          add("action-strategy-support", agents[a].name + " plays '" + agents[a].actions[x] + "' outside Act at " +
                                             states[s].id);
    }
  }

  // declared cognitive strategies
  for (size_t a = 0; a < n; ++a)
    for (int kind = 0; kind < 2; ++kind)
      for (auto& ds : kind == 0 ? declared_goal_strategies[a] : declared_intention_strategies[a]) {
        StateIdx last = ds.path.empty() ? *ds.state : ds.path.back();
        auto& legal = kind == 0 ? states[last].legal_goals[a] : states[last].legal_intentions[a];
        if (total(ds.dist) != 1)
          add("cognitive-strategy", "declared strategy of " + agents[a].name + " at " + states[last].id +
                                        " sums to " + to_string(total(ds.dist)));
        for (auto& [x, p] : ds.dist)
          if (p > 0 && !std::binary_search(legal.begin(), legal.end(), x))
            add("cognitive-strategy", "declared strategy of " + agents[a].name + " at " + states[last].id +
                                          " supports an illegal change");
      }

  // guards
  std::set<std::string> agent_names;
  for (auto& ag : agents) agent_names.insert(ag.name);
  auto check_guard = [&](const FormulaPtr& g, const std::string& owner, const std::string& where) {
    for (auto& m : validate_guard(*g, owner)) add("guard", where + ": " + m);
    for (auto& m : unresolved_names(*g, agent_names, propositions)) add("guard", where + ": " + m);
  };
  for (size_t a = 0; a < n; ++a) {
    for (auto& [x, g] : guards[a].goal)
      check_guard(g, agents[a].name, "goal guard " + agents[a].goal_set_name(x) + " of " + agents[a].name);
    for (auto& [xy, g] : guards[a].intention)
      check_guard(g, agents[a].name, "intention guard " + agents[a].intentions[xy.first] + " of " + agents[a].name);
    for (size_t b = 0; b < n; ++b) {
      for (auto& [x, g] : preference_guards[a][b].goal)
        check_guard(g, agents[b].name, "goal preference guard of " + agents[a].name + " over " + agents[b].name);
      for (auto& [xy, g] : preference_guards[a][b].intention)
        check_guard(g, agents[b].name, "intention preference guard of " + agents[a].name + " over " + agents[b].name);
    }
  }

  for (size_t a = 0; a < n; ++a) check_pairs(static_cast<int>(a));

  for (auto& id : completed_) report_.warnings.push_back("sink completion at " + id);
}

void Model::check_pairs(int A) {
  auto& V = report_.violations;
  std::set<std::string> seen;
  auto add = [&](const std::string& code, const std::string& msg) {
    if (seen.insert(code + msg).second) V.push_back({code, msg});
  };
  const std::string& an = agents[A].name;
  using P = std::pair<StateIdx, StateIdx>;
  std::set<P> visited;
  std::deque<P> queue;
  auto push = [&](StateIdx s, StateIdx t) {
    P p{std::min(s, t), std::max(s, t)};
    if (visited.insert(p).second) queue.push_back(p);
  };
  for (auto& [s, p] : initial)
    for (auto& [t, q] : initial)
      if (p > 0 && q > 0 && obs(A, s) == obs(A, t)) push(s, t);
  while (!queue.empty()) {
    auto [s, t] = queue.front();
    queue.pop_front();
    if (s != t) {
      const State& x = states[s];
      const State& y = states[t];
      std::string pair = "(" + x.id + "," + y.id + ")";
      for (size_t b = 0; b < agents.size(); ++b) {
        const std::string& bn = agents[b].name;
        if (available_actions(static_cast<int>(b), s) != available_actions(static_cast<int>(b), t))
          add("uniformity-I", "obs_" + an + "(" + x.id + ")=obs_" + an + "(" + y.id + ") but Act_" + bn + " differs at " + pair);
        if (x.legal_goals[b] != y.legal_goals[b])
          add("uniformity-I", "obs_" + an + "(" + x.id + ")=obs_" + an + "(" + y.id + ") but GO_" + bn + " differs at " + pair);
        if (x.legal_intentions[b] != y.legal_intentions[b])
          add("uniformity-I", "obs_" + an + "(" + x.id + ")=obs_" + an + "(" + y.id + ") but IN_" + bn + " differs at " + pair);
        if (static_cast<int>(b) != A) {
          if (goal_preference(static_cast<int>(b), A, s) != goal_preference(static_cast<int>(b), A, t))
            add("uniformity-II", "obs_" + an + "(" + x.id + ")=obs_" + an + "(" + y.id + ") but goal preference of " + bn + " over " + an + " differs");
          if (intention_preference(static_cast<int>(b), A, s) != intention_preference(static_cast<int>(b), A, t))
            add("uniformity-II", "obs_" + an + "(" + x.id + ")=obs_" + an + "(" + y.id + ") but intention preference of " + bn + " over " + an + " differs");
        }
      }
    }
    for (auto& u : succ_[s])
      for (auto& v : succ_[t]) {
        if (obs(A, u.to) != obs(A, v.to)) continue;
        if (!(classify(A, s, u.step, u.to, false) == classify(A, t, v.step, v.to, false))) {
          add("assumption-4", "observations of " + an + " do not separate steps " + step_name(u.step) + " at " +
                                  states[s].id + " and " + step_name(v.step) + " at " + states[t].id);
          continue;
        }
        push(u.to, v.to);
      }
  }
}

}  // namespace asmas
