#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "asmas/io.hpp"
#include "json.hpp"

namespace asmas::testkit {

namespace {

using json = nlohmann::ordered_json;

const char* const kProbs[] = {"1/2", "1/3", "2/3", "1/4", "3/4", "1/5"};

std::string complement(const std::string& p) {
  Rational q = 1 - parse_rational(p);
  return to_string(q);
}

}  // namespace

std::string random_model_document(const RandomModelSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  const int k = spec.locations;
  const std::vector<std::string> intents = {"_", "x", "y"};
  const std::vector<std::string> goals = spec.ann_goals ? std::vector<std::string>{"", "g"} : std::vector<std::string>{""};
  auto sid = [&](int l, int i, int g) {
    return "l" + std::to_string(l) + intents[i] + (goals.size() > 1 ? (g ? "g" : "n") : "");
  };
  // observation classes of locations (partial observation only)
  std::vector<int> cls(k);
  for (int l = 0; l < k; ++l) cls[l] = spec.full_observation ? l : pick(std::max(1, k - 1));
  int classes = *std::max_element(cls.begin(), cls.end()) + 1;
  // per-class legal intentions of Ben and goal legality of Ann
  std::vector<std::vector<std::string>> legal(classes);
  std::vector<bool> goal_change(classes);
  std::vector<std::pair<std::string, std::string>> pref(classes);
  for (int c = 0; c < classes; ++c) {
    switch (spec.ben_guards ? 3 * pick(2) : pick(4)) {
      case 0: break;
      case 1: legal[c] = {"x"}; break;
      case 2: legal[c] = {"y"}; break;
      default: legal[c] = {"x", "y"}; break;
    }
    goal_change[c] = spec.ann_goals && pick(2) == 0;
    std::string p = kProbs[pick(6)];
    pref[c] = {p, complement(p)};
  }

  json states = json::array();
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < 3; ++i)
      for (int g = 0; g < static_cast<int>(goals.size()); ++g) {
        json s = {{"id", sid(l, i, g)}, {"locals", {{"loc", std::to_string(l)}}}};
        json labels = json::array();
        if (pick(2)) labels.push_back("p");
        if (pick(3) == 0) labels.push_back("q");
        s["labels"] = labels;
        if (i) s["intention"] = {{"Ben", intents[i]}};
        if (g) s["goals"] = {{"Ann", {"g"}}};
        if (i == 0 && !legal[cls[l]].empty()) s["legal_intentions"] = {{"Ben", legal[cls[l]]}};
        if (goal_change[cls[l]]) s["legal_goals"] = {{"Ann", json::array({g ? json::array() : json::array({"g"})})}};
        states.push_back(s);
      }

  // temporal targets are intention-free states with the same goal set
  auto target = [&](int g) {
    json to = json::object();
    int l1 = pick(k), g1 = g;
    if (pick(2)) {
      to[sid(l1, 0, g1)] = 1;
    } else {
      int l2 = pick(k), g2 = g;
      if (l2 == l1 && g2 == g1) {
        to[sid(l1, 0, g1)] = 1;
      } else {
        std::string p = kProbs[pick(6)];
        to[sid(l1, 0, g1)] = p;
        to[sid(l2, 0, g2)] = complement(p);
      }
    }
    return to;
  };
  json trans = json::array();
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < 3; ++i)
      for (int g = 0; g < static_cast<int>(goals.size()); ++g) {
        if (i == 0) {
          trans.push_back({{"from", sid(l, i, g)}, {"to", target(g)}});
        } else {
          trans.push_back({{"from", sid(l, i, g)}, {"action", {{"Ben", "a"}}}, {"to", target(g)}});
          trans.push_back({{"from", sid(l, i, g)}, {"action", {{"Ben", "b"}}}, {"to", target(g)}});
        }
      }

  json obs_ann = json::object(), obs_ben = json::object();
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < 3; ++i)
      for (int g = 0; g < static_cast<int>(goals.size()); ++g) {
        const std::string id = sid(l, i, g);
        obs_ben[id] = id;
        obs_ann[id] = spec.full_observation ? id
                                            : "c" + std::to_string(cls[l]) + (i ? "+" : "-") + (g ? "g" : "");
      }

  json x_dist = {{"a", 1}};
  if (spec.stochastic_actions) {
    std::string p = kProbs[pick(6)];
    x_dist = {{"a", p}, {"b", complement(p)}};
  }
  json prefs = json::array();
  for (int c = 0; c < classes; ++c) {
    if (legal[c].size() != 2) continue;
    json at = json::array();
    for (int l = 0; l < k; ++l)
      if (cls[l] == c)
        for (int g = 0; g < static_cast<int>(goals.size()); ++g) at.push_back(sid(l, 0, g));
    prefs.push_back({{"holder", "Ann"},
                     {"over", "Ben"},
                     {"kind", "intention"},
                     {"states", at},
                     {"dist", {{"x", pref[c].first}, {"y", pref[c].second}}}});
  }

  json initial = json::object();
  if (pick(3) == 0 && k > 1) {
    initial[sid(0, 0, 0)] = "1/2";
    initial[sid(1, 0, 0)] = "1/2";
  } else {
    initial[sid(0, 0, 0)] = 1;
  }

  json ann = {{"name", "Ann"}};
  if (spec.ann_goals) ann["goals"] = {"g"};
  json doc = {{"format", 1},
              {"name", "random-" + std::to_string(spec.seed)},
              {"agents", json::array({ann,
                                      {{"name", "Ben"}, {"actions", {"a", "b"}}, {"intentions", {"x", "y"}}}})},
              {"propositions", {"p", "q"}},
              {"states", states},
              {"initial", initial},
              {"transitions", trans},
              {"observations", {{"Ann", {{"map", obs_ann}}}, {"Ben", {{"map", obs_ben}}}}},
              {"action_strategies", {{"Ben", {{"x", {{"default", x_dist}}}, {"y", {{"default", {{"b", 1}}}}}}}}},
              {"preferences", prefs}};
  if (spec.ben_guards) {
    doc["guards"] = {{"Ben",
                      {{"intention",
                        json::array({{{"intention", "x"}, {"goals", json::array()}, {"guard", "true"}},
                                     {{"intention", "y"},
                                      {"goals", json::array()},
                                      {"guard", "B{Ben}=? [ p ]"}}})}}}};
  }
  return doc.dump(1);
}

Model random_model(const RandomModelSpec& spec) {
  Model m = load_model_text(random_model_document(spec), "random-" + std::to_string(spec.seed));
  m.require_clean();
  return m;
}

// ---------------------------------------------------------------- formulas

std::string FormulaGen::relation(bool query_ok) {
  static const char* const cmps[] = {">=", ">", "<=", "<"};
  static const char* const bounds[] = {"0", "1/3", "1/2", "2/3", "1"};
  (void)query_ok;
  return std::string(cmps[pick(4)]) + bounds[pick(5)];
}

FormulaPtr FormulaGen::path(int depth) {
  const int k = 1 + pick(2);
  switch (pick(4)) {
    case 0: return make(Op::Next, {state(depth - 1)});
    case 1: return make_bounded(Op::BUntil, k, {state(depth - 1), state(depth - 1)});
    case 2: return make_bounded(Op::BEventually, k, {state(depth - 1)});
    default: return make_bounded(Op::BAlways, k, {state(depth - 1)});
  }
}

FormulaPtr FormulaGen::state(int depth) {
  const int choices = depth <= 0 ? 3 : 13;
  std::string text;
  switch (pick(choices)) {
    case 0: return make_atom(pick(2) ? "p" : "q");
    case 1: return make_not(make_atom(pick(2) ? "p" : "q"));
    case 2: return pick(4) == 0 ? make(Op::True) : make_atom("p");
    case 3: return make(Op::And, {state(depth - 1), state(depth - 1)});
    case 4: return make_not(state(depth));
    case 5: text = "P" + relation(true) + " [ " + to_string(*path(depth)) + " ]"; break;
    case 6: text = "B{Ann}" + relation(true) + " [ " + to_string(*path(depth)) + " ]"; break;
    case 7: text = "B{Ben}" + relation(true) + " [ " + to_string(*path(depth)) + " ]"; break;
    case 8: text = "CT{Ann,Ben}" + relation(true) + " [ " + to_string(*path(depth)) + " ]"; break;
    case 9: text = "DT{Ann,Ben}" + relation(true) + " [ " + to_string(*path(depth)) + " ]"; break;
    case 10: text = std::string(pick(2) ? "A" : "E") + " [ " + to_string(*path(depth)) + " ]"; break;
    case 11: text = std::string(pick(2) ? "INTN{Ben} " : "CAP{Ben} ") + "(" + to_string(*state(depth - 1)) + ")"; break;
    default: text = "GOAL{Ann} (" + to_string(*state(depth - 1)) + ")"; break;
  }
  return parse_formula(text);
}

// ---------------------------------------------------------------- automata

StochasticAutomaton random_automaton(std::mt19937_64& rng, std::size_t states, std::size_t symbols) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  StochasticAutomaton a;
  a.states = states;
  a.init.assign(states, 0);
  a.init[pick(static_cast<int>(states))] = 1;
  if (states > 1 && pick(2)) {
    a.init.assign(states, 0);
    a.init[0] = Rational(1, 2);
    a.init[1 + pick(static_cast<int>(states) - 1)] += Rational(1, 2);
  }
  a.trans.assign(symbols, SparseRows(states));
  for (std::size_t i = 0; i < states; ++i) {
    // each state's mass is split over (symbol, target) with a small denominator
    const int denom = 2 + pick(3);
    int left = denom - pick(2);  // possibly sub-stochastic
    std::map<std::pair<std::size_t, std::size_t>, int> parts;
    while (left > 0) {
      std::size_t s = static_cast<std::size_t>(pick(static_cast<int>(symbols)));
      std::size_t t = static_cast<std::size_t>(pick(static_cast<int>(states)));
      int share = 1 + pick(left);
      parts[{s, t}] += share;
      left -= share;
    }
    for (auto& [st, n] : parts) {
      Rational w(n, denom);
      w.canonicalize();
      a.trans[st.first][i].emplace_back(st.second, w);
    }
  }
  return a;
}

StochasticAutomaton renamed(const StochasticAutomaton& a, const std::vector<std::size_t>& perm) {
  StochasticAutomaton b;
  b.states = a.states;
  b.init.assign(a.states, 0);
  for (std::size_t i = 0; i < a.states; ++i) b.init[perm[i]] = a.init[i];
  b.trans.assign(a.symbols(), SparseRows(a.states));
  for (std::size_t s = 0; s < a.symbols(); ++s)
    for (std::size_t i = 0; i < a.states; ++i)
      for (auto& [j, w] : a.trans[s][i]) b.trans[s][perm[i]].emplace_back(perm[j], w);
  return b;
}

StochasticAutomaton split_state(const StochasticAutomaton& a, std::size_t s, const Rational& share) {
  StochasticAutomaton b;
  const std::size_t n = a.states, copy = n;
  b.states = n + 1;
  b.init = a.init;
  b.init.push_back(a.init[s] * (1 - share));
  b.init[s] = a.init[s] * share;
  b.trans.assign(a.symbols(), SparseRows(n + 1));
  for (std::size_t sym = 0; sym < a.symbols(); ++sym)
    for (std::size_t i = 0; i < n; ++i)
      for (auto& [j, w] : a.trans[sym][i]) {
        auto add = [&](std::size_t from) {
          if (j == s) {
            b.trans[sym][from].emplace_back(s, w * share);
            b.trans[sym][from].emplace_back(copy, w * (1 - share));
          } else {
            b.trans[sym][from].emplace_back(j, w);
          }
        };
        add(i);
        if (i == s) add(copy);
      }
  return b;
}

StochasticAutomaton perturbed(const StochasticAutomaton& a, std::mt19937_64& rng) {
  StochasticAutomaton b = a;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t s = 0; s < b.symbols(); ++s)
    for (std::size_t i = 0; i < b.states; ++i)
      if (!b.trans[s][i].empty()) cells.emplace_back(s, i);
  if (cells.empty()) return b;
  auto [s, i] = cells[rng() % cells.size()];
  auto& e = b.trans[s][i][rng() % b.trans[s][i].size()];
  e.second /= 2;
  return b;
}

bool words_agree(const StochasticAutomaton& a, const StochasticAutomaton& b, std::size_t max_len) {
  const std::size_t syms = std::max(a.symbols(), b.symbols());
  std::vector<int> w;
  std::function<bool(std::size_t)> rec = [&](std::size_t len) {
    if (word_probability(a, w) != word_probability(b, w)) return false;
    if (len == max_len) return true;
    for (std::size_t s = 0; s < syms; ++s) {
      w.push_back(static_cast<int>(s));
      bool ok = rec(len + 1);
      w.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

}  // namespace asmas::testkit
