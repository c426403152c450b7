#include "asmas/path.hpp"

#include <sstream>

#include "asmas/error.hpp"

namespace asmas {

Step parse_step(const Model& m, std::string_view text) {
  std::string t(text);
  if (t == "temporal" || t == "action") return Step::temporal();
  auto dot = t.find('.');
  if (dot == std::string::npos || dot + 2 >= t.size() || t[dot + 2] != '.')
    throw ParseError("malformed step '" + t + "'");
  int a = m.agent_index(t.substr(0, dot));
  char kind = t[dot + 1];
  std::string val = t.substr(dot + 3);
  const Agent& ag = m.agents[a];
  if (kind == 'g') {
    std::vector<std::string> goals;
    if (!val.empty() && val.front() == '{') {
      if (val.back() != '}') throw ParseError("malformed goal set in step '" + t + "'");
      std::string inner = val.substr(1, val.size() - 2), cur;
      std::istringstream is(inner);
      while (std::getline(is, cur, ','))
        if (!cur.empty()) goals.push_back(cur);
    } else {
      goals.push_back(val);
    }
    int id = ag.find_goal_set(goals);
    if (id == kNone) throw ParseError("unknown goal set in step '" + t + "'");
    return Step::goal(a, id);
  }
  if (kind == 'i') {
    int id = ag.intention_id(val);
    if (id == kNone) throw ParseError("unknown intention in step '" + t + "'");
    return Step::intention(a, id);
  }
  throw ParseError("malformed step '" + t + "'");
}

FinitePath parse_path(const Model& m, std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string tok;
  FinitePath p;
  std::optional<Step> pending;
  while (is >> tok) {
    if (tok[0] == '@') {
      if (p.states.empty()) throw ParseError("step annotation before the first state");
      pending = parse_step(m, tok.substr(1));
      continue;
    }
    auto s = m.find_state(tok);
    if (!s) throw ParseError("unknown state '" + tok + "' in path");
    if (p.states.empty()) {
      p.states.push_back(*s);
      continue;
    }
    StateIdx from = p.last();
    if (pending) {
      if (!m.valid_step(from, *pending, *s))
        throw ModelError("invalid step " + m.step_name(*pending) + " from " + m.states[from].id + " to " + tok);
      p = p.extended(*pending, *s);
      pending.reset();
      continue;
    }
    std::vector<Step> cands;
    for (auto& sc : m.successors(from))
      if (sc.to == *s) cands.push_back(sc.step);
    if (cands.empty()) throw ModelError("no transition from " + m.states[from].id + " to " + tok);
    if (cands.size() > 1)
      throw ModelError("ambiguous step from " + m.states[from].id + " to " + tok + "; annotate with @<step>");
    p = p.extended(cands[0], *s);
  }
  if (p.states.empty()) throw ParseError("empty path");
  if (pending) throw ParseError("dangling step annotation");
  return p;
}

std::string to_string(const Model& m, const FinitePath& p, bool with_steps) {
  std::string s;
  for (size_t i = 0; i < p.states.size(); ++i) {
    if (i) {
      s += ' ';
      if (with_steps && p.steps[i - 1].cognitive()) s += "@" + m.step_name(p.steps[i - 1]) + " ";
    }
    s += m.states[p.states[i]].id;
  }
  return s;
}

std::string path_id(const Model& m, const FinitePath& p) {
  std::string s;
  for (auto st : p.states) s += m.states[st].id;
  return s;
}

bool valid_path(const Model& m, const FinitePath& p) {
  if (p.states.empty() || p.steps.size() + 1 != p.states.size()) return false;
  for (size_t i = 0; i + 1 < p.states.size(); ++i)
    if (!m.valid_step(p.states[i], p.steps[i], p.states[i + 1])) return false;
  return true;
}

std::vector<FinitePath> extensions(const Model& m, const FinitePath& p, std::size_t len) {
  std::vector<FinitePath> out;
  if (p.size() >= len) {
    if (p.size() == len) out.push_back(p);
    return out;
  }
  for (auto& sc : m.successors(p.last())) {
    auto sub = extensions(m, p.extended(sc.step, sc.to), len);
    out.insert(out.end(), std::make_move_iterator(sub.begin()), std::make_move_iterator(sub.end()));
  }
  return out;
}

std::vector<FinitePath> initialized_paths(const Model& m, std::size_t len) {
  std::vector<FinitePath> out;
  std::vector<FinitePath> frontier;
  for (auto& [s, p] : m.initial)
    if (p > 0) frontier.emplace_back(s);
  while (!frontier.empty()) {
    std::vector<FinitePath> next;
    for (auto& f : frontier) {
      out.push_back(f);
      if (f.size() < len)
        for (auto& sc : m.successors(f.last())) next.push_back(f.extended(sc.step, sc.to));
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace asmas
