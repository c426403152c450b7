#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "asmas/semantics.hpp"

namespace asmas {

/// Cognitive strategies instantiated from the model: declared entries first
/// (exact path, then last state), then normalized guard evaluations, then
/// uniform over the legal set when the agent has no guards for that kind.
/// Guard-derived values are memoized per observation trace of the agent.
class SynthesizedStrategies : public StrategyProvider {
 public:
  /// Guards are evaluated in `mode` against the model's own preferences.
  explicit SynthesizedStrategies(const Model& m, BeliefMode mode = BeliefMode::PathClass);

  Dist<int> goal(int agent, const FinitePath& p) override;
  Dist<int> intention(int agent, const FinitePath& p) override;
  bool weighted(int agent, Step::Kind kind) const override;

  /// eval^g_A(x)(ρ): 0 when x is not legal at last(ρ) or has no guard.
  Rational eval_goal(int agent, int goal_set, const FinitePath& p);
  /// eval^i_A(x)(ρ) with the guard for (x, gs_A(last ρ)).
  Rational eval_intention(int agent, int intention, const FinitePath& p);
  /// Value of an arbitrary guard formula of the agent at ρ.
  Rational eval_guard(const Formula& g, const FinitePath& p);

  struct Entry {
    int agent;
    Step::Kind kind;
    std::string key;   // observation trace (plus labels for label-dependent guards)
    FinitePath sample; // first path that produced the entry
    Dist<int> dist;
    std::string source;  // "declared", "guards" or "uniform"
  };
  /// Entries computed so far, in key order.
  std::vector<Entry> table() const;

  const Model& model() const { return m_; }
  Evaluator& guard_evaluator() { return *ev_; }

 private:
  Dist<int> compute(int agent, Step::Kind kind, const FinitePath& p);
  std::string memo_key(int agent, Step::Kind kind, const FinitePath& p) const;

  const Model& m_;
  ModelPreferences prefs_;
  std::unique_ptr<Evaluator> ev_;
  std::map<std::tuple<int, int, std::string>, Entry> memo_;
  std::set<std::tuple<int, int, std::string>> active_;
  std::vector<bool> label_goal_, label_intention_;
};

/// History-dependent preferences γ^h: state preferences reweighted by the
/// cross-agent guards ω_{A,B} and renormalized. Without guards for a pair and
/// kind the state preference is returned unchanged.
class UpdatedPreferences : public PreferenceProvider {
 public:
  explicit UpdatedPreferences(SynthesizedStrategies& guards);
  Dist<int> goal(int holder, int over, const FinitePath& prefix) const override;
  Dist<int> intention(int holder, int over, const FinitePath& prefix) const override;
  /// True when some ω_{A,B} is present.
  bool nontrivial() const;

 private:
  Dist<int> update(int holder, int over, bool goal, const FinitePath& p) const;

  SynthesizedStrategies& g_;
  mutable std::map<std::tuple<int, int, bool, FinitePath>, Dist<int>> memo_;
};

/// Whether a guard's truth may depend on the current state beyond the
/// agent's observation (an atom outside belief and trust operators).
bool state_dependent_guard(const Formula& g);

}  // namespace asmas
