#include "asmas/belief.hpp"

#include <algorithm>
#include <sstream>

#include "asmas/error.hpp"

namespace asmas {

ObservationTrace parse_trace(const Model& m, int observer, std::string_view text) {
  ObservationTrace t;
  t.observer = observer;
  std::istringstream is{std::string(text)};
  std::string tok;
  std::optional<TransitionType> pending;
  auto push_obs = [&](const std::string& o) {
    if (!t.obs.empty()) t.types.push_back(pending.value_or(TransitionType{}));
    else if (pending) throw ParseError("transition type before the first observation in trace");
    pending.reset();
    t.obs.push_back(o);
  };
  while (is >> tok) {
    if (tok.size() > 3 && tok.rfind("o(", 0) == 0 && tok.back() == ')') {
      push_obs(m.obs(observer, m.index_of(tok.substr(2, tok.size() - 3))));
    } else if (tok.rfind("obs:", 0) == 0) {
      push_obs(tok.substr(4));
    } else {
      if (pending) throw ParseError("two transition types in a row in trace at '" + tok + "'");
      TransitionType tt;
      auto dot = tok.find('.');
      if (tok == "action" || tok == "temporal") {
        tt.kind = TransitionType::Kind::Action;
      } else if (dot != std::string::npos && dot + 2 == tok.size()) {
        tt.agent = m.agent_index(tok.substr(0, dot));
        if (tt.agent == observer) throw ParseError("own cognitive step needs a value in trace: '" + tok + "'");
        if (tok[dot + 1] == 'g') tt.kind = TransitionType::Kind::OtherGoal;
        else if (tok[dot + 1] == 'i') tt.kind = TransitionType::Kind::OtherIntention;
        else throw ParseError("malformed transition type '" + tok + "'");
      } else {
        Step st = parse_step(m, tok);
        if (st.agent != observer) throw ParseError("another agent's step carries no value for the observer: '" + tok + "'");
        tt.agent = st.agent;
        tt.value = st.value;
        tt.kind = st.kind == Step::Kind::Goal ? TransitionType::Kind::OwnGoal : TransitionType::Kind::OwnIntention;
      }
      pending = tt;
    }
  }
  if (pending) throw ParseError("trace ends with a transition type");
  if (t.obs.empty()) throw ParseError("empty trace");
  return t;
}

ObservationTrace trace_of(const Model& m, int observer, const FinitePath& p) {
  ObservationTrace t;
  t.observer = observer;
  for (size_t i = 0; i < p.size(); ++i) {
    t.obs.push_back(m.obs(observer, p.states[i]));
    if (i + 1 < p.size()) t.types.push_back(m.classify(observer, p.states[i], p.steps[i], p.states[i + 1], false));
  }
  return t;
}

std::string trace_key(const Model& m, const ObservationTrace& t) {
  std::string k = m.agents[t.observer].name + "|";
  for (size_t i = 0; i < t.obs.size(); ++i) {
    k += t.obs[i];
    if (i < t.types.size()) k += " -" + m.type_name(t.types[i]) + "-> ";
  }
  return k;
}

std::vector<FinitePath> obs_class(const Model& m, const ObservationTrace& o) {
  std::vector<FinitePath> cur;
  if (o.obs.empty()) return cur;
  std::vector<StateIdx> init;
  for (auto& [s, p] : m.initial)
    if (p > 0 && m.obs(o.observer, s) == o.obs[0]) init.push_back(s);
  std::sort(init.begin(), init.end(), [&](auto a, auto b) { return m.states[a].id < m.states[b].id; });
  for (auto s : init) cur.emplace_back(s);
  for (size_t k = 0; k < o.types.size(); ++k) {
    std::vector<FinitePath> next;
    for (auto& p : cur)
      for (auto& sc : m.successors(p.last()))
        if (m.obs(o.observer, sc.to) == o.obs[k + 1] &&
            m.classify(o.observer, p.last(), sc.step, sc.to, false) == o.types[k])
          next.push_back(p.extended(sc.step, sc.to));
    cur = std::move(next);
  }
  return cur;
}

Rational BeliefAssignment::of(const FinitePath& p) const {
  for (auto& [q, v] : entries)
    if (q == p) return v;
  return 0;
}

namespace {

BeliefAssignment normalized(const Model& m, ObservationTrace t, std::vector<std::pair<FinitePath, Rational>> w) {
  Rational sum = 0;
  for (auto& [p, v] : w) sum += v;
  if (sum == 0)
    throw EvalError("undefined-belief", "observation class has zero measure: " + trace_key(m, t));
  BeliefAssignment b;
  b.trace = std::move(t);
  for (auto& [p, v] : w)
    if (v > 0) b.entries.push_back({std::move(p), v / sum});
  return b;
}

}  // namespace

BeliefAssignment belief_assignment(const Model& m, const PreferenceProvider& prefs, const ObservationTrace& o) {
  std::vector<std::pair<FinitePath, Rational>> w;
  for (auto& p : obs_class(m, o)) {
    Rational v = path_probability(m, prefs, o.observer, p);
    w.push_back({std::move(p), v});
  }
  return normalized(m, o, std::move(w));
}

Rational belief(const Model& m, const PreferenceProvider& prefs, const ObservationTrace& o, const FinitePath& rho) {
  return belief_assignment(m, prefs, o).of(rho);
}

BeliefAssignment belief_update_step(const Model& m, const PreferenceProvider& prefs, const BeliefAssignment& prior,
                                    const std::string& next_obs, const TransitionType& next_type) {
  ObservationTrace t = prior.trace;
  t.obs.push_back(next_obs);
  t.types.push_back(next_type);
  std::vector<std::pair<FinitePath, Rational>> w;
  for (auto& [p, be] : prior.entries)
    for (auto& sc : m.successors(p.last())) {
      if (m.obs(t.observer, sc.to) != next_obs) continue;
      if (!(m.classify(t.observer, p.last(), sc.step, sc.to, false) == next_type)) continue;
      Rational v = be * aux_transition(m, prefs, t.observer, p, sc.step, sc.to);
      w.push_back({p.extended(sc.step, sc.to), v});
    }
  return normalized(m, std::move(t), std::move(w));
}

BeliefAssignment belief_recursive(const Model& m, const PreferenceProvider& prefs, const ObservationTrace& o) {
  ObservationTrace first;
  first.observer = o.observer;
  first.obs = {o.obs.at(0)};
  BeliefAssignment b = belief_assignment(m, prefs, first);
  for (size_t k = 0; k < o.types.size(); ++k) b = belief_update_step(m, prefs, b, o.obs[k + 1], o.types[k]);
  return b;
}

// ---------------------------------------------------------------- belief ASMAS

BeliefState belief_initial(const Model& m, int observer, const std::string& o) {
  BeliefState b;
  Rational sum = 0;
  for (auto& [s, p] : m.initial)
    if (p > 0 && m.obs(observer, s) == o) {
      b[s] += p;
      sum += p;
    }
  if (sum == 0) throw EvalError("undefined-belief", "observation '" + o + "' is not observed initially");
  for (auto& [s, p] : b) p /= sum;
  return b;
}

namespace {

// Unnormalized pushforward of b under `kind`, keyed by successor observation.
std::map<std::string, BeliefState> pushforward(const Model& m, int A, const BeliefState& b, const TransitionType& kind) {
  using K = TransitionType::Kind;
  std::map<std::string, BeliefState> out;
  for (auto& [s, w] : b) {
    if (w == 0) continue;
    for (auto& sc : m.successors(s)) {
      if (!(m.classify(A, s, sc.step, sc.to, false) == kind)) continue;
      Rational f;
      switch (kind.kind) {
        case K::Action: f = sc.prob; break;
        case K::OwnGoal: case K::OwnIntention: f = 1; break;
        case K::OtherGoal: {
          auto d = m.goal_preference(A, kind.agent, s);
          auto it = d.find(sc.step.value);
          f = it == d.end() ? Rational(0) : it->second;
          break;
        }
        case K::OtherIntention: {
          auto d = m.intention_preference(A, kind.agent, s);
          auto it = d.find(sc.step.value);
          f = it == d.end() ? Rational(0) : it->second;
          break;
        }
      }
      if (f > 0) out[m.obs(A, sc.to)][sc.to] += w * f;
    }
  }
  return out;
}

}  // namespace

std::optional<std::pair<BeliefState, Rational>> belief_successor(const Model& m, int observer, const BeliefState& b,
                                                                 const TransitionType& kind, const std::string& o) {
  auto push = pushforward(m, observer, b, kind);
  auto it = push.find(o);
  if (it == push.end()) return std::nullopt;
  Rational mass = total(it->second);
  BeliefState nb;
  for (auto& [s, w] : it->second) nb[s] = w / mass;
  return std::make_pair(std::move(nb), mass);
}

std::vector<std::tuple<std::string, BeliefState, Rational>> belief_successors(const Model& m, int observer,
                                                                              const BeliefState& b,
                                                                              const TransitionType& kind) {
  std::vector<std::tuple<std::string, BeliefState, Rational>> out;
  for (auto& [o, un] : pushforward(m, observer, b, kind)) {
    Rational mass = total(un);
    BeliefState nb;
    for (auto& [s, w] : un) nb[s] = w / mass;
    out.emplace_back(o, std::move(nb), mass);
  }
  return out;
}

std::vector<TransitionType> belief_kinds(const Model& m, int observer, const BeliefState& b) {
  std::vector<TransitionType> out;
  for (auto& [s, w] : b) {
    if (w == 0) continue;
    for (auto& sc : m.successors(s)) {
      auto t = m.classify(observer, s, sc.step, sc.to, false);
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
  }
  return out;
}

BeliefState belief_state_of(const Model& m, int observer, const FinitePath& p) {
  auto t = trace_of(m, observer, p);
  BeliefState b = belief_initial(m, observer, t.obs[0]);
  for (size_t k = 0; k < t.types.size(); ++k) {
    auto nb = belief_successor(m, observer, b, t.types[k], t.obs[k + 1]);
    if (!nb) throw EvalError("undefined-belief", "zero-probability observation along " + to_string(m, p));
    b = std::move(nb->first);
  }
  return b;
}

BeliefAsmas explore_belief_asmas(const Model& m, int observer, std::size_t depth) {
  BeliefAsmas g;
  std::map<BeliefState, size_t> index;
  auto intern = [&](BeliefState b, size_t lvl) {
    auto [it, fresh] = index.emplace(b, g.nodes.size());
    if (fresh) {
      g.nodes.push_back(std::move(b));
      g.level.push_back(lvl);
    }
    return std::make_pair(it->second, fresh);
  };
  std::set<std::string> init_obs;
  for (auto& [s, p] : m.initial)
    if (p > 0) init_obs.insert(m.obs(observer, s));
  std::vector<size_t> frontier;
  for (auto& o : init_obs) frontier.push_back(intern(belief_initial(m, observer, o), 0).first);
  for (size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<size_t> next;
    for (size_t id : frontier) {
      BeliefState b = g.nodes[id];
      for (auto& kind : belief_kinds(m, observer, b))
        for (auto& [o, nb, p] : belief_successors(m, observer, b, kind)) {
          auto [to, fresh] = intern(nb, d + 1);
          g.edges.push_back({id, to, kind, o, p});
          if (fresh) next.push_back(to);
        }
    }
    frontier = std::move(next);
  }
  for (size_t id : frontier)
    if (!belief_kinds(m, observer, g.nodes[id]).empty()) g.truncated = true;
  return g;
}

std::string to_string(const Model& m, const BeliefState& b) {
  std::string s = "<";
  bool first = true;
  for (auto& [st, p] : b) {
    if (p == 0) continue;
    s += (first ? "" : ", ") + m.states[st].id + "->" + to_string(p);
    first = false;
  }
  return s + ">";
}

}  // namespace asmas
