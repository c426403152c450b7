#include "asmas/bounded.hpp"

#include <algorithm>
#include <sstream>

#include "asmas/error.hpp"

namespace asmas {

BoundedChecker::BoundedChecker(const Model& m, const PreferenceProvider& prefs, StrategyProvider& strategies)
    : m_(m), prefs_(prefs), strat_(strategies), rp_(m.num_agents()) {}

int BoundedChecker::agent(const std::string& name) const {
  auto a = m_.find_agent(name);
  if (!a) throw EvalError("unknown-agent", "unknown agent '" + name + "'");
  return *a;
}

void BoundedChecker::require_fragment(const Formula& phi) const {
  if (classify_fragment(phi) != Fragment::BPRTL)
    throw FragmentError("the bounded checker accepts BPRTL formulas only: " + to_string(phi));
}

int BoundedChecker::intern_joint(StateIdx s) {
  std::vector<std::string> o;
  for (std::size_t a = 0; a < m_.num_agents(); ++a) o.push_back(m_.obs(static_cast<int>(a), s));
  auto [it, fresh] = joint_index_.emplace(o, static_cast<int>(joint_.size()));
  if (fresh) joint_.push_back(std::move(o));
  return it->second;
}

void BoundedChecker::ensure_level(std::size_t level) {
  while (levels_.size() <= level) {
    std::vector<std::size_t> next;
    auto add = [&](StateIdx s, std::vector<int> hist, FinitePath rep) {
      auto key = std::make_pair(s, hist);
      auto it = index_.find(key);
      if (it != index_.end()) return it->second;
      std::size_t id = nodes_.size();
      ExpandedState e;
      e.base = s;
      e.history = std::move(hist);
      e.rep = std::move(rep);
      nodes_.push_back(std::move(e));
      for (auto& r : rp_) r.push_back(0);
      index_.emplace(std::move(key), id);
      next.push_back(id);
      return id;
    };
    if (levels_.empty()) {
      for (auto& [s, p] : m_.initial) {
        if (p <= 0) continue;
        std::size_t id = add(s, {}, FinitePath(s));
        for (auto& r : rp_) r[id] += p;
      }
    } else {
      for (std::size_t n : levels_.back()) {
        std::vector<int> hist = nodes_[n].history;
        hist.push_back(intern_joint(nodes_[n].base));
        for (auto& su : m_.successors(nodes_[n].base)) {
          std::size_t c = add(su.to, hist, nodes_[n].rep.extended(su.step, su.to));
          nodes_[n].out.push_back({su.step, c});
          for (std::size_t a = 0; a < m_.num_agents(); ++a) {
            if (rp_[a][n] == 0) continue;
            rp_[a][c] += rp_[a][n] * aux_transition(m_, prefs_, static_cast<int>(a), nodes_[n].rep, su.step, su.to);
          }
        }
        nodes_[n].expanded = true;
      }
    }
    levels_.push_back(std::move(next));
  }
}

const std::vector<ExpandedState::Edge>& BoundedChecker::out(std::size_t n) {
  ensure_level(nodes_[n].clk() + 1);
  return nodes_[n].out;
}

std::optional<std::size_t> BoundedChecker::embed(const FinitePath& rho) {
  if (rho.states.empty()) return std::nullopt;
  ensure_level(0);
  std::optional<std::size_t> cur;
  for (std::size_t n : levels_[0])
    if (nodes_[n].base == rho.states[0]) cur = n;
  for (std::size_t i = 0; cur && i + 1 < rho.size(); ++i) cur = step_to(*cur, rho.steps[i], rho.states[i + 1]);
  return cur;
}

std::optional<std::size_t> BoundedChecker::step_to(std::size_t n, const Step& st, std::optional<StateIdx> target) {
  for (auto& e : out(n))
    if (e.step == st && (!target || nodes_[e.to].base == *target)) return e.to;
  return std::nullopt;
}

std::size_t BoundedChecker::cog(std::size_t n, const Step& st) {
  auto c = step_to(n, st);
  if (!c) throw ModelError("no expanded successor for " + m_.step_name(st) + " at " + to_string(m_, nodes_[n].rep));
  return *c;
}

std::string BoundedChecker::class_key(int a, std::size_t n) const {
  std::string key = std::to_string(nodes_[n].clk()) + ":";
  for (int j : nodes_[n].history) key += joint_[j][a] + '\x1f';
  return key + m_.obs(a, nodes_[n].base);
}

const std::vector<std::size_t>& BoundedChecker::obs_class(int a, std::size_t n) {
  std::string key = std::to_string(a) + "@" + class_key(a, n);
  auto it = classes_.find(key);
  if (it != classes_.end()) return it->second;
  std::vector<std::size_t> members;
  for (std::size_t k : levels_[nodes_[n].clk()])
    if (class_key(a, k) == class_key(a, n)) members.push_back(k);
  return classes_.emplace(key, std::move(members)).first->second;
}

Rational BoundedChecker::reach_prob(int a, std::size_t n) { return rp_[a][n]; }

Rational BoundedChecker::local_belief(int a, std::size_t n) {
  Rational total = 0;
  for (std::size_t k : obs_class(a, n)) total += rp_[a][k];
  if (total == 0)
    throw EvalError("undefined-belief", "zero-probability observation class for " + m_.agents[a].name + " at " +
                                            to_string(m_, nodes_[n].rep));
  return rp_[a][n] / total;
}

bool BoundedChecker::run_holds(const std::vector<std::size_t>& run, std::size_t i, const Formula& f) {
  if (is_state(f)) return holds(run[i], f);
  switch (f.op) {
    case Op::Not: return !run_holds(run, i, f.kid());
    case Op::And: return run_holds(run, i, f.kid(0)) && run_holds(run, i, f.kid(1));
    case Op::Or: return run_holds(run, i, f.kid(0)) || run_holds(run, i, f.kid(1));
    case Op::Implies: return !run_holds(run, i, f.kid(0)) || run_holds(run, i, f.kid(1));
    case Op::Next: return run_holds(run, i + 1, f.kid());
    case Op::BUntil:
      for (int j = 0; j <= f.k; ++j) {
        if (run_holds(run, i + j, f.kid(1))) return true;
        if (!run_holds(run, i + j, f.kid(0))) return false;
      }
      return false;
    case Op::BEventually:
      for (int j = 0; j <= f.k; ++j)
        if (run_holds(run, i + j, f.kid())) return true;
      return false;
    case Op::BAlways:
      for (int j = 0; j <= f.k; ++j)
        if (!run_holds(run, i + j, f.kid())) return false;
      return true;
    default:
      throw FragmentError("unbounded temporal operator in '" + to_string(f) + "'");
  }
}

Rational BoundedChecker::path_prob(std::size_t n, const Formula& psi) {
  if (is_state(psi)) return holds(n, psi) ? 1 : 0;
  if (!bounded(psi)) throw FragmentError("unbounded temporal operator in '" + to_string(psi) + "'");
  auto key = std::make_pair(n, to_string(psi));
  if (auto it = prob_memo_.find(key); it != prob_memo_.end()) return it->second;
  const int h = horizon(psi);
  Rational total = 0;
  std::vector<std::size_t> run{n};
  // depth-first over temporal continuations of length h
  auto dfs = [&](auto&& self, const Rational& w) -> void {
    if (static_cast<int>(run.size()) == h + 1) {
      if (run_holds(run, 0, psi)) total += w;
      return;
    }
    std::size_t cur = run.back();
    for (auto& e : out(cur)) {
      if (e.step.kind != Step::Kind::Temporal) continue;
      Rational p = m_.chain_prob(nodes_[cur].base, nodes_[e.to].base);
      if (p == 0) continue;
      run.push_back(e.to);
      self(self, w * p);
      run.pop_back();
    }
  };
  dfs(dfs, Rational(1));
  prob_memo_.emplace(std::move(key), total);
  return total;
}

Rational BoundedChecker::belief_sum(std::size_t n, int a, const Formula& psi) {
  Rational v = 0;
  for (std::size_t k : obs_class(a, n)) {
    Rational be = local_belief(a, k);
    if (be != 0) v += be * path_prob(k, psi);
  }
  return v;
}

Rational BoundedChecker::opt_intention(std::size_t n, int b, const std::vector<int>& xs, bool sup,
                                       const Formula& psi, const char* empty_kind) {
  if (xs.empty())
    throw EvalError(empty_kind, std::string(empty_kind) + " for " + m_.agents[b].name + " at " +
                                   to_string(m_, nodes_[n].rep));
  std::optional<Rational> best;
  for (int x : xs) {
    Rational v = path_prob(cog(n, Step::intention(b, x)), psi);
    if (!best || (sup ? v > *best : v < *best)) best = v;
  }
  return *best;
}

Rational BoundedChecker::ct(std::size_t n, int a, int b, Cmp c, const Formula& psi) {
  Rational v = 0;
  for (std::size_t k : obs_class(a, n)) {
    Rational be = local_belief(a, k);
    if (be == 0) continue;
    v += be * opt_intention(k, b, m_.states[nodes_[k].base].legal_intentions[b], upward(c), psi,
                            "no-legal-intention");
  }
  return v;
}

Rational BoundedChecker::dt(std::size_t n, int a, int b, Cmp c, const Formula& psi) {
  Rational v = 0;
  for (std::size_t k : obs_class(a, n)) {
    Rational be = local_belief(a, k);
    if (be == 0) continue;
    v += be * opt_intention(k, b, support(strat_.intention(b, nodes_[k].rep)), !upward(c), psi,
                            "no-possible-intention");
  }
  return v;
}

bool BoundedChecker::holds(std::size_t n, const Formula& f) {
  Verdict v = sat(n, f);
  if (v.numeric)
    throw EvalError("unsupported-formula", "quantitative formula used as a truth value: " + to_string(f));
  return v.truth;
}

Verdict BoundedChecker::sat(std::size_t n, const Formula& f) {
  auto key = std::make_pair(n, to_string(f));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Verdict v = sat_uncached(n, f);
  memo_.emplace(std::move(key), v);
  return v;
}

namespace {

Verdict threshold(const Formula& f, const Rational& v) {
  if (f.query) return Verdict::number(v);
  return Verdict::boolean(compare(v, f.cmp, f.bound));
}

}  // namespace

Verdict BoundedChecker::sat_uncached(std::size_t n, const Formula& f) {
  const StateIdx s = nodes_[n].base;
  switch (f.op) {
    case Op::True: return Verdict::boolean(true);
    case Op::False: return Verdict::boolean(false);
    case Op::Atom: return Verdict::boolean(m_.label(s, f.atom));
    case Op::Not: return Verdict::boolean(!holds(n, f.kid()));
    case Op::And: return Verdict::boolean(holds(n, f.kid(0)) && holds(n, f.kid(1)));
    case Op::Or: return Verdict::boolean(holds(n, f.kid(0)) || holds(n, f.kid(1)));
    case Op::Implies: return Verdict::boolean(!holds(n, f.kid(0)) || holds(n, f.kid(1)));
    case Op::Prob: return threshold(f, path_prob(n, f.kid()));
    case Op::Forall: return Verdict::boolean(path_prob(n, f.kid()) == 1);
    case Op::Exists: return Verdict::boolean(path_prob(n, f.kid()) > 0);
    case Op::Goal: {
      int a = agent(f.agent1);
      for (int x : support(strat_.goal(a, nodes_[n].rep)))
        if (!holds(cog(n, Step::goal(a, x)), f.kid())) return Verdict::boolean(false);
      return Verdict::boolean(true);
    }
    case Op::Intn: {
      int a = agent(f.agent1);
      for (int x : support(strat_.intention(a, nodes_[n].rep)))
        if (!holds(cog(n, Step::intention(a, x)), f.kid())) return Verdict::boolean(false);
      return Verdict::boolean(true);
    }
    case Op::Cap: {
      int a = agent(f.agent1);
      for (int x : m_.states[s].legal_intentions[a])
        if (holds(cog(n, Step::intention(a, x)), f.kid())) return Verdict::boolean(true);
      return Verdict::boolean(false);
    }
    case Op::Bel: return threshold(f, belief_sum(n, agent(f.agent1), f.kid()));
    case Op::CT: return threshold(f, ct(n, agent(f.agent1), agent(f.agent2), f.cmp, f.kid()));
    case Op::DT: return threshold(f, dt(n, agent(f.agent1), agent(f.agent2), f.cmp, f.kid()));
    case Op::ST: {
      int a = agent(f.agent1), b = agent(f.agent2);
      bool bel = compare(belief_sum(n, a, f.kid()), f.cmp, f.bound);
      bool c = compare(ct(n, a, b, f.cmp, f.kid()), f.cmp, f.bound);
      return Verdict::boolean(bel != c);
    }
    case Op::STQ: {
      int a = agent(f.agent1), b = agent(f.agent2);
      bool with = false, without = false;
      for (int x : m_.states[s].legal_intentions[b]) {
        std::size_t t = cog(n, Step::intention(b, x));
        bool can = false;
        for (int y : m_.states[nodes_[t].base].legal_intentions[a])
          if (holds(cog(t, Step::intention(a, y)), f.kid())) {
            can = true;
            break;
          }
        (can ? with : without) = true;
      }
      return Verdict::boolean(with && without);
    }
    case Op::WT: {
      int a = agent(f.agent1), b = agent(f.agent2);
      Rational lhs = 0, rhs = 0;
      for (std::size_t k : obs_class(a, n)) {
        Rational be = local_belief(a, k);
        if (be == 0) continue;
        Rational side = 0;
        for (auto& [x, px] : prefs_.intention(a, b, nodes_[k].rep))
          if (px != 0) side += px * path_prob(cog(k, Step::intention(b, x)), f.kid());
        lhs += be * side;
        rhs += be * opt_intention(k, a, m_.states[nodes_[k].base].legal_intentions[a], upward(f.cmp), f.kid(),
                                  "no-legal-intention");
      }
      return Verdict::boolean(compare(lhs, f.cmp, rhs));
    }
    default:
      return Verdict::boolean(path_prob(n, f) == 1);
  }
}

Verdict BoundedChecker::check_at(const FinitePath& rho, const Formula& phi) {
  require_fragment(phi);
  auto n = embed(rho);
  if (!n) throw ModelError("path " + to_string(m_, rho) + " is not a valid path of the model");
  return sat(*n, phi);
}

Verdict BoundedChecker::check(const Formula& phi) {
  require_fragment(phi);
  ensure_level(0);
  const auto& init = levels_[0];
  if (phi.query) {
    if (init.size() != 1)
      throw EvalError("unsupported-formula", "a query needs a single initial state: " + to_string(phi));
    return sat(init[0], phi);
  }
  for (std::size_t n : init)
    if (!holds(n, phi)) return Verdict::boolean(false);
  return Verdict::boolean(true);
}

std::string BoundedChecker::dump(std::size_t max_level) {
  ensure_level(max_level);
  std::ostringstream os;
  os << "joint observations:\n";
  for (std::size_t j = 0; j < joint_.size(); ++j) {
    os << "  j" << j << " = (";
    for (std::size_t a = 0; a < joint_[j].size(); ++a) os << (a ? ", " : "") << joint_[j][a];
    os << ")\n";
  }
  for (std::size_t k = 0; k <= max_level; ++k) {
    os << "level " << k << ": " << levels_[k].size() << " states\n";
    for (std::size_t n : levels_[k]) {
      const auto& e = nodes_[n];
      os << "  #" << n << " " << m_.states[e.base].id << " [";
      for (std::size_t i = 0; i < e.history.size(); ++i) os << (i ? " " : "") << "j" << e.history[i];
      os << "] path=" << path_id(m_, e.rep) << " rP={";
      for (std::size_t a = 0; a < m_.num_agents(); ++a)
        os << (a ? ", " : "") << m_.agents[a].name << ":" << to_string(rp_[a][n]);
      os << "}\n";
    }
  }
  return os.str();
}

}  // namespace asmas
