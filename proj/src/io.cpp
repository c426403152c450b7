#include "asmas/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "asmas/error.hpp"
#include "asmas/path.hpp"
#include "json.hpp"

namespace asmas {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

class Loader {
 public:
  explicit Loader(std::string origin) : origin_(std::move(origin)) {}

  Model load(const json& doc);

 private:
  [[noreturn]] void fail(const std::string& ctx, const std::string& msg) const {
    throw ModelError(origin_ + ": " + ctx + ": " + msg);
  }
  void keys(const json& j, const std::string& ctx, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(ctx, "expected an object");
    for (auto& [k, v] : j.items()) {
      bool ok = false;
      for (auto* a : allowed) ok = ok || k == a;
      if (!ok) fail(ctx, "unknown key '" + k + "'");
    }
  }
  const json& need(const json& j, const char* key, const std::string& ctx) const {
    if (!j.contains(key)) fail(ctx, std::string("missing key '") + key + "'");
    return j.at(key);
  }
  std::string str(const json& j, const std::string& ctx) const {
    if (!j.is_string()) fail(ctx, "expected a string");
    return j.get<std::string>();
  }
  std::vector<std::string> strs(const json& j, const std::string& ctx) const {
    if (!j.is_array()) fail(ctx, "expected an array of strings");
    std::vector<std::string> out;
    for (auto& e : j) out.push_back(str(e, ctx));
    return out;
  }
  Rational prob(const json& j, const std::string& ctx) const {
    try {
      if (j.is_number_integer()) return Rational(j.get<long>());
      if (j.is_string()) return parse_rational(j.get<std::string>(), false);
    } catch (const ParseError& e) {
      fail(ctx, e.what());
    }
    fail(ctx, "probabilities must be integers or \"n/d\" strings");
  }
  int agent(const Model& m, const json& j, const std::string& ctx) const {
    auto a = m.find_agent(str(j, ctx));
    if (!a) fail(ctx, "unknown agent '" + j.get<std::string>() + "'");
    return *a;
  }
  StateIdx state(const json& j, const std::string& ctx) const {
    auto s = str(j, ctx);
    auto it = ids_.find(s);
    if (it == ids_.end()) fail(ctx, "unknown state '" + s + "'");
    return it->second;
  }
  int goal_set(Agent& a, const json& j, const std::string& ctx) const {
    try {
      return a.intern_goal_set(strs(j, ctx));
    } catch (const ModelError& e) {
      fail(ctx, e.what());
    }
  }
  // "{a,b}", "a" or "{}"
  int goal_key(Agent& a, std::string k, const std::string& ctx) const {
    std::vector<std::string> gs;
    if (!k.empty() && k.front() == '{') {
      if (k.back() != '}') fail(ctx, "malformed goal set '" + k + "'");
      k = k.substr(1, k.size() - 2);
      std::stringstream ss(k);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
        if (b != std::string::npos) gs.push_back(item.substr(b, e - b + 1));
      }
    } else {
      gs.push_back(k);
    }
    try {
      return a.intern_goal_set(gs);
    } catch (const ModelError& e) {
      fail(ctx, e.what());
    }
  }
  int intention(const Agent& a, const json& j, const std::string& ctx) const {
    int x = a.intention_id(str(j, ctx));
    if (x == kNone) fail(ctx, "unknown intention '" + j.get<std::string>() + "' of " + a.name);
    return x;
  }
  Dist<int> action_dist(const Agent& a, const json& j, const std::string& ctx) const {
    if (!j.is_object()) fail(ctx, "expected an action distribution");
    Dist<int> d;
    for (auto& [k, v] : j.items()) {
      int x = a.action_id(k);
      if (x == kNone) fail(ctx, "unknown action '" + k + "' of " + a.name);
      d[x] = prob(v, ctx);
    }
    return d;
  }
  FormulaPtr formula(const json& j, const std::string& ctx) const {
    try {
      return parse_formula(str(j, ctx));
    } catch (const ParseError& e) {
      fail(ctx, e.what());
    }
  }

  void agents(Model& m, const json& j);
  void states(Model& m, const json& j, const std::set<std::string>& props);
  void strategies(Model& m, const json& j);
  void preferences(Model& m, const json& j);
  void guards(Model& m, const json& j);
  void guard_entry(Model& m, GuardTable& t, int owner, const json& e, const std::string& ctx);
  void cognitive(Model& m, const json& j);

  std::string origin_;
  std::map<std::string, StateIdx> ids_;
};

void Loader::agents(Model& m, const json& j) {
  if (!j.is_array() || j.empty()) fail("agents", "expected a nonempty array");
  for (auto& e : j) {
    keys(e, "agents", {"name", "actions", "goals", "intentions", "intention_follows_goal"});
    Agent a;
    a.name = str(need(e, "name", "agents"), "agents.name");
    if (m.find_agent(a.name)) fail("agents", "duplicate agent '" + a.name + "'");
    std::string ctx = "agent " + a.name;
    auto add_unique = [&](std::vector<std::string>& into, const json& list, const char* what) {
      for (auto& x : strs(list, ctx + "." + what)) {
        if (x == kSilent) continue;
        if (std::find(into.begin(), into.end(), x) != into.end()) fail(ctx, std::string("duplicate ") + what + " '" + x + "'");
        into.push_back(x);
      }
    };
    if (e.contains("actions")) add_unique(a.actions, e["actions"], "actions");
    if (e.contains("goals")) add_unique(a.goals, e["goals"], "goals");
    if (e.contains("intentions")) add_unique(a.intentions, e["intentions"], "intentions");
    if (e.contains("intention_follows_goal")) {
      auto& f = e["intention_follows_goal"];
      if (!f.is_array()) fail(ctx, "intention_follows_goal must be an array");
      for (auto& r : f) {
        keys(r, ctx + ".intention_follows_goal", {"goals", "intention"});
        int g = goal_set(a, need(r, "goals", ctx), ctx + ".intention_follows_goal");
        a.intention_follows_goal[g] = intention(a, need(r, "intention", ctx), ctx + ".intention_follows_goal");
      }
    }
    m.agents.push_back(std::move(a));
  }
}

void Loader::states(Model& m, const json& j, const std::set<std::string>& props) {
  if (!j.is_array() || j.empty()) fail("states", "expected a nonempty array");
  const size_t n = m.agents.size();
  for (auto& e : j) {
    keys(e, "states", {"id", "locals", "goals", "intention", "labels", "legal_goals", "legal_intentions", "enabled"});
    State s;
    s.id = str(need(e, "id", "states"), "states.id");
    std::string ctx = "state " + s.id;
    if (s.id == kSinkId) fail(ctx, "the id '_sink' is reserved");
    if (!ids_.emplace(s.id, m.states.size()).second) fail(ctx, "duplicate state id");
    s.goals.assign(n, 0);
    s.intention.assign(n, 0);
    s.legal_goals.resize(n);
    s.legal_intentions.resize(n);
    if (e.contains("locals")) {
      if (!e["locals"].is_object()) fail(ctx, "locals must be an object");
      for (auto& [k, v] : e["locals"].items()) s.locals[k] = str(v, ctx + ".locals");
    }
    auto per_agent = [&](const char* key, auto&& fn) {
      if (!e.contains(key)) return;
      if (!e[key].is_object()) fail(ctx, std::string(key) + " must be an object keyed by agent");
      for (auto& [k, v] : e[key].items()) {
        auto a = m.find_agent(k);
        if (!a) fail(ctx + "." + key, "unknown agent '" + k + "'");
        fn(*a, v);
      }
    };
    per_agent("goals", [&](int a, const json& v) { s.goals[a] = goal_set(m.agents[a], v, ctx + ".goals"); });
    per_agent("intention", [&](int a, const json& v) { s.intention[a] = intention(m.agents[a], v, ctx + ".intention"); });
    per_agent("legal_goals", [&](int a, const json& v) {
      if (!v.is_array()) fail(ctx, "legal_goals entries must be arrays of goal sets");
      for (auto& gs : v) s.legal_goals[a].push_back(goal_set(m.agents[a], gs, ctx + ".legal_goals"));
    });
    per_agent("legal_intentions", [&](int a, const json& v) {
      if (!v.is_array()) fail(ctx, "legal_intentions entries must be arrays");
      for (auto& x : v) {
        int id = intention(m.agents[a], x, ctx + ".legal_intentions");
        if (id == 0) fail(ctx, "the empty intention '_' cannot be legal");
        s.legal_intentions[a].push_back(id);
      }
    });
    if (e.contains("labels"))
      for (auto& l : strs(e["labels"], ctx + ".labels")) {
        if (!props.count(l)) fail(ctx, "undeclared proposition '" + l + "'");
        s.labels.insert(l);
      }
    if (e.contains("enabled")) {
      s.enabled = kEnableTemporal;
      for (auto& k : strs(e["enabled"], ctx + ".enabled")) {
        if (k == "goal") s.enabled |= kEnableGoal;
        else if (k == "intention") s.enabled |= kEnableIntention;
        else if (k != "temporal") fail(ctx, "unknown enabled kind '" + k + "'");
      }
    }
    s.obs.assign(n, s.id);
    m.states.push_back(std::move(s));
  }
}

void Loader::strategies(Model& m, const json& j) {
  if (!j.is_object()) fail("action_strategies", "expected an object keyed by agent");
  m.catalog.resize(m.agents.size());
  for (auto& [an, per] : j.items()) {
    auto a = m.find_agent(an);
    if (!a) fail("action_strategies", "unknown agent '" + an + "'");
    const Agent& ag = m.agents[*a];
    if (!per.is_object()) fail("action_strategies." + an, "expected an object keyed by intention");
    for (auto& [in, spec] : per.items()) {
      std::string ctx = "action_strategies." + an + "." + in;
      int x = intention(ag, json(in), ctx);
      keys(spec, ctx, {"default", "by_state", "by_observation"});
      LocalStrategy ls;
      if (spec.contains("default")) ls.fallback = action_dist(ag, spec["default"], ctx + ".default");
      if (spec.contains("by_state")) {
        if (!spec["by_state"].is_object()) fail(ctx, "by_state must be an object");
        for (auto& [sid, d] : spec["by_state"].items()) {
          state(json(sid), ctx + ".by_state");
          ls.by_state[sid] = action_dist(ag, d, ctx + ".by_state." + sid);
        }
      }
      if (spec.contains("by_observation")) {
        if (!spec["by_observation"].is_object()) fail(ctx, "by_observation must be an object");
        for (auto& [o, d] : spec["by_observation"].items()) ls.by_obs[o] = action_dist(ag, d, ctx + ".by_observation." + o);
      }
      m.catalog[*a][x] = std::move(ls);
    }
  }
}

void Loader::preferences(Model& m, const json& j) {
  if (!j.is_array()) fail("preferences", "expected an array");
  const size_t n = m.agents.size();
  m.goal_prefs.resize(n, std::vector<std::map<StateIdx, Dist<int>>>(n));
  m.intention_prefs.resize(n, std::vector<std::map<StateIdx, Dist<int>>>(n));
  for (auto& e : j) {
    keys(e, "preferences", {"holder", "over", "kind", "states", "dist"});
    int h = agent(m, need(e, "holder", "preferences"), "preferences.holder");
    int o = agent(m, need(e, "over", "preferences"), "preferences.over");
    std::string kind = str(need(e, "kind", "preferences"), "preferences.kind");
    std::string ctx = "preference of " + m.agents[h].name + " over " + m.agents[o].name;
    if (kind != "goal" && kind != "intention") fail(ctx, "kind must be 'goal' or 'intention'");
    auto& dj = need(e, "dist", ctx);
    if (!dj.is_object()) fail(ctx, "dist must be an object");
    Dist<int> d;
    for (auto& [k, v] : dj.items())
      d[kind == "goal" ? goal_key(m.agents[o], k, ctx) : intention(m.agents[o], json(k), ctx)] = prob(v, ctx);
    auto& table = kind == "goal" ? m.goal_prefs[h][o] : m.intention_prefs[h][o];
    for (auto& sid : strs(need(e, "states", ctx), ctx + ".states")) {
      StateIdx s = state(json(sid), ctx);
      if (!table.emplace(s, d).second) fail(ctx, "defined twice at " + sid);
    }
  }
}

void Loader::guard_entry(Model& m, GuardTable& t, int owner, const json& e, const std::string& ctx) {
  Agent& a = m.agents[owner];
  keys(e, ctx, {"goals", "intention", "guard"});
  int y = goal_set(a, need(e, "goals", ctx), ctx + ".goals");
  auto g = formula(need(e, "guard", ctx), ctx + ".guard");
  t.present = true;
  if (e.contains("intention")) {
    int x = intention(a, e["intention"], ctx + ".intention");
    if (!t.intention.emplace(std::make_pair(x, y), g).second) fail(ctx, "duplicate intention guard");
    t.has_intention = true;
  } else {
    if (!t.goal.emplace(y, g).second) fail(ctx, "duplicate goal guard");
    t.has_goal = true;
  }
}

void Loader::guards(Model& m, const json& j) {
  if (!j.is_object()) fail("guards", "expected an object keyed by agent");
  m.guards.resize(m.agents.size());
  for (auto& [an, spec] : j.items()) {
    auto a = m.find_agent(an);
    if (!a) fail("guards", "unknown agent '" + an + "'");
    keys(spec, "guards." + an, {"goal", "intention"});
    for (const char* kind : {"goal", "intention"}) {
      if (!spec.contains(kind)) continue;
      if (!spec[kind].is_array()) fail("guards." + an, std::string(kind) + " must be an array");
      for (auto& e : spec[kind]) {
        if (std::string(kind) == "goal" && e.contains("intention")) fail("guards." + an + ".goal", "unexpected intention");
        if (std::string(kind) == "intention" && !e.contains("intention"))
          fail("guards." + an + ".intention", "missing key 'intention'");
        guard_entry(m, m.guards[*a], *a, e, "guards." + an + "." + kind);
      }
    }
  }
}

void Loader::cognitive(Model& m, const json& j) {
  auto edges = [&](const json& list) {
    if (!list.is_array()) fail("cognitive_edges", "expected an array of edges");
    for (auto& e : list) {
      keys(e, "cognitive_edges", {"from", "step", "to"});
      StateIdx f = state(need(e, "from", "cognitive_edges"), "cognitive_edges.from");
      StateIdx t = state(need(e, "to", "cognitive_edges"), "cognitive_edges.to");
      std::string st = str(need(e, "step", "cognitive_edges"), "cognitive_edges.step");
      // parse "A.g.{x}" / "A.i.x" against the agents (states are not needed)
      auto d1 = st.find('.');
      if (d1 == std::string::npos || st.size() < d1 + 3 || st[d1 + 2] != '.') fail("cognitive_edges", "malformed step '" + st + "'");
      auto a = m.find_agent(st.substr(0, d1));
      if (!a) fail("cognitive_edges", "unknown agent in step '" + st + "'");
      std::string val = st.substr(d1 + 3);
      Step step;
      if (st[d1 + 1] == 'g') step = Step::goal(*a, goal_key(m.agents[*a], val, "cognitive_edges"));
      else if (st[d1 + 1] == 'i') step = Step::intention(*a, intention(m.agents[*a], json(val), "cognitive_edges"));
      else fail("cognitive_edges", "malformed step '" + st + "'");
      m.declared_edges.emplace_back(f, step, t);
    }
  };
  if (j.is_string()) {
    auto v = j.get<std::string>();
    if (v == "all-legal") m.generate_cognitive_edges = true;
    else if (v == "none") m.generate_cognitive_edges = false;
    else fail("cognitive_edges", "expected \"all-legal\", \"none\", a list, or an object");
  } else if (j.is_array()) {
    m.generate_cognitive_edges = false;
    edges(j);
  } else {
    keys(j, "cognitive_edges", {"all_legal", "edges"});
    m.generate_cognitive_edges = !j.contains("all_legal") || j["all_legal"].get<bool>();
    if (j.contains("edges")) edges(j["edges"]);
  }
}

Model Loader::load(const json& doc) {
  keys(doc, "document",
       {"format", "name", "agents", "propositions", "states", "initial", "transitions", "cognitive_edges", "observations",
        "action_strategies", "preferences", "guards", "preference_guards", "cognitive_strategies", "mode"});
  auto& fmt = need(doc, "format", "document");
  if (!fmt.is_number_integer() || fmt.get<int>() != 1) fail("document", "unsupported format (expected 1)");
  Model m;
  if (doc.contains("name")) m.name = str(doc["name"], "name");
  agents(m, need(doc, "agents", "document"));
  std::set<std::string> props;
  if (doc.contains("propositions"))
    for (auto& p : strs(doc["propositions"], "propositions")) props.insert(p);
  m.propositions = props;
  states(m, need(doc, "states", "document"), props);
  const size_t n = m.agents.size();

  // observations
  if (doc.contains("observations")) {
    auto& oj = doc["observations"];
    if (!oj.is_object()) fail("observations", "expected an object keyed by agent");
    for (auto& [an, spec] : oj.items()) {
      auto a = m.find_agent(an);
      if (!a) fail("observations", "unknown agent '" + an + "'");
      std::string ctx = "observations." + an;
      keys(spec, ctx, {"components", "map"});
      if (spec.contains("components") == spec.contains("map")) fail(ctx, "give exactly one of 'components' or 'map'");
      if (spec.contains("map")) {
        auto& mp = spec["map"];
        if (!mp.is_object()) fail(ctx, "map must be an object");
        for (auto& s : m.states) {
          if (!mp.contains(s.id)) fail(ctx, "no observation for state " + s.id);
          s.obs[*a] = str(mp[s.id], ctx);
        }
        for (auto& [k, v] : mp.items()) state(json(k), ctx);
      } else {
        auto comps = strs(spec["components"], ctx + ".components");
        for (auto& s : m.states) {
          std::string o;
          for (auto& c : comps) {
            std::string part;
            if (c == "id") {
              part = "id=" + s.id;
            } else if (c == "labels") {
              part = "labels=";
              for (auto& l : s.labels) part += l + ",";
            } else if (c.rfind("goal.", 0) == 0 || c.rfind("intn.", 0) == 0) {
              auto b = m.find_agent(c.substr(5));
              if (!b) fail(ctx, "unknown agent in component '" + c + "'");
              part = c + "=" + (c[0] == 'g' ? m.agents[*b].goal_set_name(s.goals[*b])
                                            : m.agents[*b].intentions[s.intention[*b]]);
            } else {
              auto it = s.locals.find(c);
              part = c + "=" + (it == s.locals.end() ? std::string(kSilent) : it->second);
            }
            o += (o.empty() ? "" : ";") + part;
          }
          s.obs[*a] = o;
        }
      }
    }
  }

  // initial
  {
    auto& ij = need(doc, "initial", "document");
    if (!ij.is_object()) fail("initial", "expected an object state -> probability");
    for (auto& [k, v] : ij.items()) m.initial.emplace_back(state(json(k), "initial"), prob(v, "initial." + k));
  }

  // transitions
  m.transitions.resize(m.states.size());
  if (doc.contains("transitions")) {
    auto& tj = doc["transitions"];
    if (!tj.is_array()) fail("transitions", "expected an array");
    for (auto& e : tj) {
      keys(e, "transitions", {"from", "action", "to"});
      StateIdx f = state(need(e, "from", "transitions"), "transitions.from");
      std::string ctx = "transition from " + m.states[f].id;
      TemporalEntry te;
      te.action.assign(n, 0);
      if (e.contains("action")) {
        if (!e["action"].is_object()) fail(ctx, "action must be an object agent -> action");
        for (auto& [an, act] : e["action"].items()) {
          auto a = m.find_agent(an);
          if (!a) fail(ctx, "unknown agent '" + an + "'");
          int x = m.agents[*a].action_id(str(act, ctx));
          if (x == kNone) fail(ctx, "unknown action '" + act.get<std::string>() + "' of " + an);
          te.action[*a] = x;
        }
      }
      auto& to = need(e, "to", ctx);
      if (!to.is_object()) fail(ctx, "to must be an object state -> probability");
      for (auto& [k, v] : to.items()) te.dist.emplace_back(state(json(k), ctx), prob(v, ctx + " to " + k));
      for (auto& other : m.transitions[f])
        if (other.action == te.action) fail(ctx, "joint action defined twice");
      m.transitions[f].push_back(std::move(te));
    }
  }

  if (doc.contains("cognitive_edges")) cognitive(m, doc["cognitive_edges"]);
  if (doc.contains("action_strategies")) strategies(m, doc["action_strategies"]);
  if (doc.contains("preferences")) preferences(m, doc["preferences"]);
  if (doc.contains("guards")) guards(m, doc["guards"]);
  if (doc.contains("preference_guards")) {
    auto& pj = doc["preference_guards"];
    if (!pj.is_array()) fail("preference_guards", "expected an array");
    m.preference_guards.resize(n, std::vector<GuardTable>(n));
    for (auto& e : pj) {
      keys(e, "preference_guards", {"holder", "over", "goals", "intention", "guard"});
      int h = agent(m, need(e, "holder", "preference_guards"), "preference_guards.holder");
      int o = agent(m, need(e, "over", "preference_guards"), "preference_guards.over");
      json rest = e;
      rest.erase("holder");
      rest.erase("over");
      guard_entry(m, m.preference_guards[h][o], o, rest, "preference_guards");
    }
  }
  if (doc.contains("cognitive_strategies")) {
    auto& cj = doc["cognitive_strategies"];
    if (!cj.is_array()) fail("cognitive_strategies", "expected an array");
    m.declared_goal_strategies.resize(n);
    m.declared_intention_strategies.resize(n);
    for (auto& e : cj) {
      keys(e, "cognitive_strategies", {"agent", "kind", "path", "state", "dist"});
      int a = agent(m, need(e, "agent", "cognitive_strategies"), "cognitive_strategies.agent");
      std::string kind = str(need(e, "kind", "cognitive_strategies"), "cognitive_strategies.kind");
      std::string ctx = "cognitive strategy of " + m.agents[a].name;
      if (kind != "goal" && kind != "intention") fail(ctx, "kind must be 'goal' or 'intention'");
      if (e.contains("path") == e.contains("state")) fail(ctx, "give exactly one of 'path' or 'state'");
      DeclaredStrategy ds;
      if (e.contains("path")) {
        std::stringstream ss(str(e["path"], ctx));
        std::string id;
        while (ss >> id) ds.path.push_back(state(json(id), ctx + ".path"));
        if (ds.path.empty()) fail(ctx, "empty path");
      } else {
        ds.state = state(e["state"], ctx + ".state");
      }
      auto& dj = need(e, "dist", ctx);
      if (!dj.is_object()) fail(ctx, "dist must be an object");
      for (auto& [k, v] : dj.items())
        ds.dist[kind == "goal" ? goal_key(m.agents[a], k, ctx) : intention(m.agents[a], json(k), ctx)] = prob(v, ctx);
      (kind == "goal" ? m.declared_goal_strategies : m.declared_intention_strategies)[a].push_back(std::move(ds));
    }
  }
  if (doc.contains("mode")) {
    auto& mj = doc["mode"];
    keys(mj, "mode", {"strict_deterministic", "cross_type_weighting"});
    auto flag = [&](const char* k) {
      if (!mj.contains(k)) return false;
      if (!mj[k].is_boolean()) fail("mode", std::string(k) + " must be a boolean");
      return mj[k].get<bool>();
    };
    m.strict_deterministic = flag("strict_deterministic");
    m.cross_type_weighting = flag("cross_type_weighting");
  }
  m.finalize();
  return m;
}

}  // namespace

Model load_model_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  try {
    return Loader(origin).load(doc);
  } catch (const json::exception& e) {
    throw ModelError(origin + ": " + e.what());
  }
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str(), path);
}

// ---------------------------------------------------------------- dump

std::string dump_model(const Model& m, int indent) {
  ojson doc;
  doc["format"] = 1;
  doc["name"] = m.name;
  const size_t n = m.num_agents();
  auto gs_names = [&](int a, int g) { return ojson(m.agents[a].goal_sets[g]); };
  ojson agents = ojson::array();
  for (size_t a = 0; a < n; ++a) {
    auto& ag = m.agents[a];
    ojson e;
    e["name"] = ag.name;
    e["actions"] = std::vector<std::string>(ag.actions.begin() + 1, ag.actions.end());
    e["goals"] = ag.goals;
    e["intentions"] = std::vector<std::string>(ag.intentions.begin() + 1, ag.intentions.end());
    if (!ag.intention_follows_goal.empty()) {
      ojson f = ojson::array();
      for (auto& [g, i] : ag.intention_follows_goal)
        f.push_back({{"goals", gs_names(a, g)}, {"intention", ag.intentions[i]}});
      e["intention_follows_goal"] = f;
    }
    agents.push_back(e);
  }
  doc["agents"] = agents;
  doc["propositions"] = m.propositions;
  std::set<std::string> completed(m.completed_states().begin(), m.completed_states().end());
  ojson states = ojson::array();
  for (auto& s : m.states) {
    if (s.sink) continue;
    ojson e;
    e["id"] = s.id;
    if (!s.locals.empty()) e["locals"] = s.locals;
    ojson goals = ojson::object(), intn = ojson::object(), lg = ojson::object(), li = ojson::object();
    for (size_t a = 0; a < n; ++a) {
      const int ai = static_cast<int>(a);
      if (s.goals[a] != 0) goals[m.agents[a].name] = gs_names(ai, s.goals[a]);
      if (s.intention[a] != 0) intn[m.agents[a].name] = m.agents[a].intentions[s.intention[a]];
      if (!s.legal_goals[a].empty()) {
        ojson l = ojson::array();
        for (int g : s.legal_goals[a]) l.push_back(gs_names(ai, g));
        lg[m.agents[a].name] = l;
      }
      if (!s.legal_intentions[a].empty()) {
        ojson l = ojson::array();
        for (int x : s.legal_intentions[a]) l.push_back(m.agents[a].intentions[x]);
        li[m.agents[a].name] = l;
      }
    }
    if (!goals.empty()) e["goals"] = goals;
    if (!intn.empty()) e["intention"] = intn;
    if (!s.labels.empty()) e["labels"] = s.labels;
    if (!lg.empty()) e["legal_goals"] = lg;
    if (!li.empty()) e["legal_intentions"] = li;
    if (s.enabled != kEnableAll) {
      ojson en = ojson::array();
      if (s.enabled & kEnableGoal) en.push_back("goal");
      if (s.enabled & kEnableIntention) en.push_back("intention");
      e["enabled"] = en;
    }
    states.push_back(e);
  }
  doc["states"] = states;
  ojson init = ojson::object();
  for (auto& [s, p] : m.initial) init[m.states[s].id] = to_string(p);
  doc["initial"] = init;
  ojson trans = ojson::array();
  for (size_t s = 0; s < m.size(); ++s) {
    if (m.states[s].sink || completed.count(m.states[s].id)) continue;
    for (auto& te : m.transitions[s]) {
      ojson e;
      e["from"] = m.states[s].id;
      ojson act = ojson::object();
      for (size_t a = 0; a < n; ++a)
        if (te.action[a] != 0) act[m.agents[a].name] = m.agents[a].actions[te.action[a]];
      if (!act.empty()) e["action"] = act;
      ojson to = ojson::object();
      for (auto& [t, p] : te.dist) to[m.states[t].id] = to_string(p);
      e["to"] = to;
      trans.push_back(e);
    }
  }
  doc["transitions"] = trans;
  {
    ojson ed = ojson::array();
    for (auto& [f, st, t] : m.declared_edges)
      ed.push_back({{"from", m.states[f].id}, {"step", m.step_name(st)}, {"to", m.states[t].id}});
    if (m.generate_cognitive_edges && ed.empty()) doc["cognitive_edges"] = "all-legal";
    else doc["cognitive_edges"] = {{"all_legal", m.generate_cognitive_edges}, {"edges", ed}};
  }
  ojson obs = ojson::object();
  for (size_t a = 0; a < n; ++a) {
    ojson mp = ojson::object();
    for (auto& s : m.states)
      if (!s.sink) mp[s.id] = s.obs[a];
    obs[m.agents[a].name] = {{"map", mp}};
  }
  doc["observations"] = obs;
  ojson strat = ojson::object();
  for (size_t a = 0; a < n; ++a) {
    if (m.catalog[a].empty()) continue;
    auto& ag = m.agents[a];
    auto dist = [&](const Dist<int>& d) {
      ojson o = ojson::object();
      for (auto& [x, p] : d) o[ag.actions[x]] = to_string(p);
      return o;
    };
    ojson per = ojson::object();
    for (auto& [x, ls] : m.catalog[a]) {
      ojson e = ojson::object();
      if (ls.fallback) e["default"] = dist(*ls.fallback);
      if (!ls.by_state.empty()) {
        ojson bs = ojson::object();
        for (auto& [k, d] : ls.by_state) bs[k] = dist(d);
        e["by_state"] = bs;
      }
      if (!ls.by_obs.empty()) {
        ojson bo = ojson::object();
        for (auto& [k, d] : ls.by_obs) bo[k] = dist(d);
        e["by_observation"] = bo;
      }
      per[ag.intentions[x]] = e;
    }
    strat[ag.name] = per;
  }
  doc["action_strategies"] = strat;
  ojson prefs = ojson::array();
  for (size_t h = 0; h < n; ++h)
    for (size_t o = 0; o < n; ++o)
      for (int kind = 0; kind < 2; ++kind) {
        auto& table = kind == 0 ? m.goal_prefs[h][o] : m.intention_prefs[h][o];
        for (auto& [s, d] : table) {
          ojson dj = ojson::object();
          for (auto& [x, p] : d)
            dj[kind == 0 ? m.agents[o].goal_set_name(x) : m.agents[o].intentions[x]] = to_string(p);
          prefs.push_back({{"holder", m.agents[h].name}, {"over", m.agents[o].name},
                           {"kind", kind == 0 ? "goal" : "intention"}, {"states", {m.states[s].id}}, {"dist", dj}});
        }
      }
  doc["preferences"] = prefs;
  auto guard_list = [&](const GuardTable& t, int owner, bool intention_side) {
    ojson l = ojson::array();
    if (intention_side) {
      for (auto& [xy, g] : t.intention)
        l.push_back({{"goals", gs_names(owner, xy.second)}, {"intention", m.agents[owner].intentions[xy.first]},
                     {"guard", to_string(*g)}});
    } else {
      for (auto& [y, g] : t.goal) l.push_back({{"goals", gs_names(owner, y)}, {"guard", to_string(*g)}});
    }
    return l;
  };
  ojson guards = ojson::object();
  for (size_t a = 0; a < n; ++a) {
    if (!m.guards[a].present) continue;
    ojson e = ojson::object();
    if (m.guards[a].has_goal) e["goal"] = guard_list(m.guards[a], static_cast<int>(a), false);
    if (m.guards[a].has_intention) e["intention"] = guard_list(m.guards[a], static_cast<int>(a), true);
    guards[m.agents[a].name] = e;
  }
  doc["guards"] = guards;
  ojson pg = ojson::array();
  for (size_t h = 0; h < n; ++h)
    for (size_t o = 0; o < n; ++o) {
      auto& t = m.preference_guards[h][o];
      for (bool side : {false, true})
        for (auto e : guard_list(t, static_cast<int>(o), side)) {
          ojson full = {{"holder", m.agents[h].name}, {"over", m.agents[o].name}};
          full.update(e);
          pg.push_back(full);
        }
    }
  doc["preference_guards"] = pg;
  ojson cs = ojson::array();
  for (size_t a = 0; a < n; ++a)
    for (int kind = 0; kind < 2; ++kind)
      for (auto& ds : kind == 0 ? m.declared_goal_strategies[a] : m.declared_intention_strategies[a]) {
        ojson e = {{"agent", m.agents[a].name}, {"kind", kind == 0 ? "goal" : "intention"}};
        if (!ds.path.empty()) {
          std::string p;
          for (auto s : ds.path) p += (p.empty() ? "" : " ") + m.states[s].id;
          e["path"] = p;
        } else {
          e["state"] = m.states[*ds.state].id;
        }
        ojson dj = ojson::object();
        for (auto& [x, p] : ds.dist)
          dj[kind == 0 ? m.agents[a].goal_set_name(x) : m.agents[a].intentions[x]] = to_string(p);
        e["dist"] = dj;
        cs.push_back(e);
      }
  doc["cognitive_strategies"] = cs;
  doc["mode"] = {{"strict_deterministic", m.strict_deterministic}, {"cross_type_weighting", m.cross_type_weighting}};
  return doc.dump(indent);
}

}  // namespace asmas
