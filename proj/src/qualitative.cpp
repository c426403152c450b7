#include "asmas/qualitative.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "asmas/error.hpp"
#include "asmas/semantics.hpp"

namespace asmas {

// ---------------------------------------------------------------- automata

Rational word_probability(const StochasticAutomaton& sa, const std::vector<int>& word) {
  std::vector<Rational> v = sa.init;
  for (int a : word) {
    std::vector<Rational> next(sa.states, 0);
    if (a >= 0 && static_cast<std::size_t>(a) < sa.symbols())
      for (std::size_t i = 0; i < sa.states; ++i) {
        if (v[i] == 0) continue;
        for (auto& [j, w] : sa.trans[a][i]) next[j] += v[i] * w;
      }
    v = std::move(next);
  }
  Rational total = 0;
  for (auto& x : v) total += x;
  return total;
}

namespace {

// Incremental row-echelon basis over exact rationals.
class Basis {
 public:
  explicit Basis(std::size_t dim) : dim_(dim) {}

  /// Adds v when it is independent of the basis; returns whether it was added.
  bool add(std::vector<Rational> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational c = v[pivots_[k]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (rows_[k][j] != 0) v[j] -= c * rows_[k][j];
    }
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    const Rational lead = v[p];
    for (auto& x : v) x /= lead;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

void apply(const StochasticAutomaton& sa, int a, const std::vector<Rational>& in, std::size_t off,
           std::vector<Rational>& out) {
  if (static_cast<std::size_t>(a) >= sa.symbols()) return;
  for (std::size_t i = 0; i < sa.states; ++i) {
    const Rational& x = in[off + i];
    if (x == 0) continue;
    for (auto& [j, w] : sa.trans[a][i]) out[off + j] += x * w;
  }
}

}  // namespace

bool tzeng_equivalent(const StochasticAutomaton& a, const StochasticAutomaton& b) {
  const std::size_t n1 = a.states, n2 = b.states, dim = n1 + n2;
  const std::size_t syms = std::max(a.symbols(), b.symbols());
  std::vector<Rational> start(dim, 0);
  for (std::size_t i = 0; i < n1; ++i) start[i] = a.init[i];
  for (std::size_t i = 0; i < n2; ++i) start[n1 + i] = b.init[i];
  Basis basis(dim);
  std::deque<std::vector<Rational>> queue;
  if (basis.add(start)) queue.push_back(start);
  auto balanced = [&](const std::vector<Rational>& v) {
    Rational s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < n1; ++i) s1 += v[i];
    for (std::size_t i = 0; i < n2; ++i) s2 += v[n1 + i];
    return s1 == s2;
  };
  // The spanning vectors are images u(w) of words; equality of the two sums
  // on a spanning set extends to every word by linearity.
  while (!queue.empty()) {
    std::vector<Rational> v = std::move(queue.front());
    queue.pop_front();
    if (!balanced(v)) return false;
    for (std::size_t s = 0; s < syms; ++s) {
      std::vector<Rational> w(dim, 0);
      apply(a, static_cast<int>(s), v, 0, w);
      apply(b, static_cast<int>(s), v, n1, w);
      if (basis.add(w)) queue.push_back(std::move(w));
    }
  }
  return true;
}

// ---------------------------------------------------------------- product

std::vector<bool> chain_reachable(const Model& m) {
  std::vector<bool> seen(m.size(), false);
  std::deque<StateIdx> q;
  for (auto& [s, p] : m.initial)
    if (p > 0 && !seen[s]) {
      seen[s] = true;
      q.push_back(s);
    }
  while (!q.empty()) {
    StateIdx s = q.front();
    q.pop_front();
    for (auto& [t, p] : m.chain_row(s))
      if (p > 0 && !seen[t]) {
        seen[t] = true;
        q.push_back(t);
      }
  }
  return seen;
}

bool check_precondition(const Model& m, const std::vector<bool>& psi, std::pair<StateIdx, StateIdx>* offending) {
  auto reach = chain_reachable(m);
  for (StateIdx s = 0; s < m.size(); ++s) {
    if (!reach[s] || !psi[s]) continue;
    for (auto& [t, p] : m.chain_row(s))
      if (p > 0 && !psi[t]) {
        if (offending) *offending = {s, t};
        return false;
      }
  }
  return true;
}

ProductSystem build_product(const Model& m, int observer, const std::vector<bool>& bad) {
  ProductSystem prod;
  prod.observer = observer;
  std::deque<std::size_t> q;
  auto intern = [&](StateIdx s1, StateIdx s2) {
    auto [it, fresh] = prod.index.emplace(std::make_pair(s1, s2), prod.states.size());
    if (fresh) {
      prod.states.emplace_back(s1, s2);
      prod.edges.emplace_back();
      q.push_back(it->second);
    }
    return it->second;
  };
  std::vector<StateIdx> init;
  for (auto& [s, p] : m.initial)
    if (p > 0) init.push_back(s);
  for (StateIdx s1 : init)
    for (StateIdx s2 : init)
      if (m.obs(observer, s1) == m.obs(observer, s2)) prod.initial.push_back(intern(s1, s2));
  while (!q.empty()) {
    std::size_t i = q.front();
    q.pop_front();
    auto [s1, s2] = prod.states[i];
    const auto& r1 = m.chain_row(s1);
    const auto& r2 = m.chain_row(s2);
    for (auto& [t1, p1] : r1) {
      if (p1 == 0) continue;
      const std::string& o = m.obs(observer, t1);
      Rational mass2 = 0;  // second-copy mass compatible with t1
      for (auto& [t2, p2] : r2)
        if (p2 > 0 && bad[t2] && m.obs(observer, t2) == o) mass2 += p2;
      if (mass2 == 0) continue;
      Rational mass1 = 0;  // first-copy mass compatible with o
      for (auto& [u1, q1] : r1)
        if (q1 > 0 && m.obs(observer, u1) == o) mass1 += q1;
      for (auto& [t2, p2] : r2) {
        if (p2 == 0 || !bad[t2] || m.obs(observer, t2) != o) continue;
        std::size_t j = intern(t1, t2);
        prod.edges[i].push_back({j, p1 * p2 / mass2, p2 * p1 / mass1});
      }
    }
  }
  return prod;
}

std::vector<SccComponent> classify_sccs(const Model& m, const ProductSystem& prod, const std::vector<bool>& psi) {
  const std::size_t n = prod.states.size();
  // iterative Tarjan
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  int counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e < prod.edges[v].size()) {
        std::size_t w = prod.edges[v][e++].to;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  std::sort(comps.begin(), comps.end());

  std::map<std::string, int> symbols;
  auto symbol = [&](StateIdx s) {
    return symbols.emplace(m.obs(prod.observer, s), static_cast<int>(symbols.size())).first->second;
  };
  std::vector<SccComponent> out;
  for (auto& comp : comps) {
    SccComponent c;
    c.members = comp;
    std::map<std::size_t, std::size_t> local;
    for (std::size_t k = 0; k < comp.size(); ++k) local[comp[k]] = k;
    c.closed1 = c.closed2 = true;
    for (std::size_t v : comp) {
      Rational in1 = 0, in2 = 0;
      for (auto& e : prod.edges[v])
        if (local.count(e.to)) {
          c.cyclic = true;
          in1 += e.w1;
          in2 += e.w2;
        }
      if (in1 != 1) c.closed1 = false;
      if (in2 != 1) c.closed2 = false;
      if (psi[prod.states[v].first]) c.formula_specific = true;
    }
    if (c.double_closed()) {
      StochasticAutomaton sa[2];
      SparseRows chain[2];
      for (int k = 0; k < 2; ++k) {
        sa[k].states = comp.size();
        chain[k].assign(comp.size(), {});
      }
      for (std::size_t v : comp)
        for (auto& e : prod.edges[v]) {
          auto it = local.find(e.to);
          if (it == local.end()) continue;
          std::size_t a = static_cast<std::size_t>(symbol(prod.states[e.to].first));
          for (int k = 0; k < 2; ++k) {
            if (sa[k].trans.size() <= a) sa[k].trans.resize(a + 1, SparseRows(comp.size()));
            const Rational& w = k == 0 ? e.w1 : e.w2;
            sa[k].trans[a][local[v]].emplace_back(it->second, w);
            chain[k][local[v]].emplace_back(it->second, w);
          }
        }
      for (int k = 0; k < 2; ++k) sa[k].init = stationary(chain[k]);
      c.internal_equivalent = tzeng_equivalent(sa[0], sa[1]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------- checker

QualitativeResult check_qualitative(const Model& m, const Formula& phi, StrategyProvider& strategies) {
  Pqrtl1Parts parts;
  if (!pqrtl1_parts(phi, parts))
    throw FragmentError("the qualitative checker accepts G(psi => P~q [ F X>=1 [ psi ] ]) only: " + to_string(phi));
  QualitativeResult r;
  r.variant = parts.inner->op;
  auto obs_agent = m.find_agent(parts.inner->agent1);
  if (!obs_agent) throw EvalError("unknown-agent", "unknown agent '" + parts.inner->agent1 + "'");
  const int a = *obs_agent;
  int b = -1;
  if (r.variant != Op::Bel) {
    auto bb = m.find_agent(parts.inner->agent2);
    if (!bb) throw EvalError("unknown-agent", "unknown agent '" + parts.inner->agent2 + "'");
    b = *bb;
  }

  ModelPreferences prefs(m);
  Evaluator ev(m, prefs, strategies);
  r.psi.assign(m.size(), false);
  for (StateIdx s = 0; s < m.size(); ++s) r.psi[s] = ev.holds(FinitePath(s), *parts.psi);

  std::pair<StateIdx, StateIdx> edge;
  if (!check_precondition(m, r.psi, &edge))
    throw EvalError("precondition-failed", "psi is not invariant: " + m.states[edge.first].id + " -> " +
                                               m.states[edge.second].id + " leaves the psi-region");

  auto reach = chain_reachable(m);
  r.bad.assign(m.size(), false);
  for (StateIdx t = 0; t < m.size(); ++t) {
    if (r.variant == Op::Bel) {
      r.bad[t] = !r.psi[t];
      continue;
    }
    std::vector<int> xs = r.variant == Op::DT ? support(strategies.intention(b, FinitePath(t)))
                                              : m.states[t].legal_intentions[b];
    if (xs.empty()) {
      if (!reach[t]) continue;
      const char* kind = r.variant == Op::DT ? "no-possible-intention" : "no-legal-intention";
      throw EvalError(kind, std::string(kind) + " for " + m.agents[b].name + " at " + m.states[t].id);
    }
    bool any_bad = false, all_bad = true;
    for (int x : xs) {
      auto u = m.intention_target(t, b, x);
      if (!u) throw ModelError("no target for " + m.agents[b].name + ".i." + m.agents[b].intentions[x]);
      if (r.psi[*u]) all_bad = false;
      else any_bad = true;
    }
    r.bad[t] = r.variant == Op::DT ? any_bad : all_bad;
  }

  r.product = build_product(m, a, r.bad);
  r.sccs = classify_sccs(m, r.product, r.psi);
  const std::size_t n = r.product.states.size();
  SparseRows rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto& e : r.product.edges[i]) rows[i].emplace_back(e.to, e.w1);
  std::vector<bool> target(n, false), safe(n, true);
  for (auto& c : r.sccs)
    if (c.qualifying())
      for (std::size_t v : c.members) target[v] = true;
  std::vector<Rational> x = n ? solve_until(rows, safe, target) : std::vector<Rational>{};

  for (std::size_t i = 0; i < n; ++i) {
    auto [s, t] = r.product.states[i];
    if (r.psi[s] && r.bad[t]) r.seeds.push_back({s, t, x[i]});
  }
  for (StateIdx s = 0; s < m.size(); ++s)
    if (reach[s] && r.psi[s]) r.reach[s] = 0;
  for (auto& sd : r.seeds)
    if (sd.p > r.reach[sd.s]) r.reach[sd.s] = sd.p;

  const Rational one_minus_q = Rational(1) - parts.q;
  for (auto& [s, p] : r.reach) {
    bool witness = false;
    switch (parts.cmp) {
      case Cmp::Ge: witness = p > one_minus_q; break;
      case Cmp::Gt: witness = p >= one_minus_q; break;
      case Cmp::Le: witness = p < one_minus_q; break;
      case Cmp::Lt: witness = p <= one_minus_q; break;
      case Cmp::Eq: witness = p != one_minus_q; break;
    }
    if (witness) {
      r.verdict = false;
      r.witness = s;
      break;
    }
  }
  r.warnings.push_back(
      "reachability is seeded at every product pair (s,t) with s in psi; p(s) is the maximum over its seeds");
  return r;
}

std::string dump_sccs(const Model& m, const QualitativeResult& r) {
  std::ostringstream os;
  auto pair_name = [&](std::size_t i) {
    auto [s1, s2] = r.product.states[i];
    return "(" + m.states[s1].id + "," + m.states[s2].id + ")";
  };
  os << "product: " << r.product.states.size() << " states\n";
  for (std::size_t k = 0; k < r.sccs.size(); ++k) {
    const auto& c = r.sccs[k];
    os << "scc " << k << ": {";
    for (std::size_t i = 0; i < c.members.size(); ++i) os << (i ? " " : "") << pair_name(c.members[i]);
    os << "} cyclic=" << c.cyclic << " closed1=" << c.closed1 << " closed2=" << c.closed2
       << " internal_equivalent=" << c.internal_equivalent << " formula_specific=" << c.formula_specific
       << " qualifying=" << c.qualifying() << "\n";
  }
  for (auto& sd : r.seeds)
    os << "seed (" << m.states[sd.s].id << "," << m.states[sd.t].id << ") p=" << to_string(sd.p) << "\n";
  for (auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace asmas
