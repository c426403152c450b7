#include "asmas/simulate.hpp"

#include "asmas/error.hpp"

namespace asmas {

std::vector<Move> scheduled_moves(const Model& m, StrategyProvider& strategies, const FinitePath& rho) {
  const StateIdx s = rho.last();
  const State& st = m.states[s];
  std::vector<Move> out;
  for (int pass = 0; pass < 2 && out.empty(); ++pass) {
    for (std::size_t a = 0; a < m.num_agents() && out.empty(); ++a) {
      const int ia = static_cast<int>(a);
      const bool goal = pass == 0;
      if ((goal ? st.legal_goals[a] : st.legal_intentions[a]).empty()) continue;
      Dist<int> d = goal ? strategies.goal(ia, rho) : strategies.intention(ia, rho);
      for (auto& [x, p] : d) {
        if (p == 0) continue;
        Step step = goal ? Step::goal(ia, x) : Step::intention(ia, x);
        auto t = m.step_target(s, step);
        if (!t) throw ModelError("no target for " + m.step_name(step) + " at " + st.id);
        out.push_back({step, *t, p});
      }
    }
  }
  if (out.empty())
    for (auto& [t, p] : m.chain_row(s)) out.push_back({Step::temporal(), t, p});
  return out;
}

Rational execution_probability(const Model& m, StrategyProvider& strategies, const FinitePath& rho) {
  Rational p = m.initial_prob(rho.states[0]);
  for (std::size_t i = 0; i + 1 < rho.size() && p != 0; ++i) {
    Rational q = 0;
    for (auto& mv : scheduled_moves(m, strategies, rho.prefix(i + 1)))
      if (mv.step == rho.steps[i] && mv.to == rho.states[i + 1]) q += mv.prob;
    p *= q;
  }
  return p;
}

namespace {

template <class T>
const T& sample(const std::vector<std::pair<T, Rational>>& items, std::mt19937_64& rng) {
  // 53-bit uniform in [0,1), independent of the standard library's distributions
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double acc = 0;
  for (auto& [x, p] : items) {
    acc += p.get_d();
    if (u < acc) return x;
  }
  return items.back().first;
}

}  // namespace

FinitePath simulate_path(const Model& m, StrategyProvider& strategies, std::mt19937_64& rng, std::size_t steps) {
  std::vector<std::pair<StateIdx, Rational>> init;
  for (auto& [s, p] : m.initial)
    if (p > 0) init.emplace_back(s, p);
  FinitePath rho(sample(init, rng));
  for (std::size_t k = 0; k < steps; ++k) {
    auto moves = scheduled_moves(m, strategies, rho);
    if (moves.empty()) break;
    std::vector<std::pair<std::size_t, Rational>> idx;
    for (std::size_t i = 0; i < moves.size(); ++i) idx.emplace_back(i, moves[i].prob);
    const Move& mv = moves[sample(idx, rng)];
    rho = rho.extended(mv.step, mv.to);
  }
  return rho;
}

}  // namespace asmas
