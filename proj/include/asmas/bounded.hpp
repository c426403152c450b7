#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asmas/semantics.hpp"

namespace asmas {

/// State of the expanded system M#: a base state plus the joint observations
/// of all earlier states on the path (the history tuple without its ⊥ tail).
struct ExpandedState {
  StateIdx base = 0;
  std::vector<int> history;  // interned joint observations, oldest first
  FinitePath rep;            // a path of M embedded into this state
  struct Edge {
    Step step;
    std::size_t to;
  };
  std::vector<Edge> out;
  bool expanded = false;

  std::size_t clk() const { return history.size(); }
};

/// Bounded model checker for the BPRTL fragment over the expanded system.
/// Levels are materialized on demand; beliefs are evaluated locally from the
/// reachability probabilities rP_A.
class BoundedChecker {
 public:
  BoundedChecker(const Model& m, const PreferenceProvider& prefs, StrategyProvider& strategies);

  /// Verdict of φ at the embedding of ρ.
  Verdict check_at(const FinitePath& rho, const Formula& phi);
  /// M ⊨ φ: φ must hold at every initial state with positive μ0. A query
  /// formula needs a single initial state.
  Verdict check(const Formula& phi);
  Verdict sat(std::size_t node, const Formula& phi);

  /// e#(ρ); nullopt when ρ is not a valid path.
  std::optional<std::size_t> embed(const FinitePath& rho);
  Rational reach_prob(int observer, std::size_t node);
  Rational local_belief(int observer, std::size_t node);
  /// Expanded states sharing the observer's observation history.
  const std::vector<std::size_t>& obs_class(int observer, std::size_t node);

  void ensure_level(std::size_t level);
  std::size_t levels() const { return levels_.size(); }
  const std::vector<std::size_t>& level(std::size_t k) const { return levels_[k]; }
  const ExpandedState& node(std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  /// Distinct joint observations seen so far.
  std::size_t joint_observations() const { return joint_.size(); }
  std::string dump(std::size_t max_level);

 private:
  int intern_joint(StateIdx s);
  const std::vector<ExpandedState::Edge>& out(std::size_t n);
  std::string class_key(int observer, std::size_t n) const;
  Rational path_prob(std::size_t n, const Formula& psi);
  bool run_holds(const std::vector<std::size_t>& run, std::size_t i, const Formula& psi);
  bool holds(std::size_t n, const Formula& f);
  /// Cognitive steps determine the target; temporal steps need `target`.
  std::optional<std::size_t> step_to(std::size_t n, const Step& st, std::optional<StateIdx> target = std::nullopt);
  std::size_t cog(std::size_t n, const Step& st);
  Rational belief_sum(std::size_t n, int a, const Formula& psi);
  Rational opt_intention(std::size_t n, int b, const std::vector<int>& xs, bool sup, const Formula& psi,
                         const char* empty_kind);
  Rational ct(std::size_t n, int a, int b, Cmp c, const Formula& psi);
  Rational dt(std::size_t n, int a, int b, Cmp c, const Formula& psi);
  Verdict sat_uncached(std::size_t n, const Formula& f);
  int agent(const std::string& name) const;
  void require_fragment(const Formula& phi) const;

  const Model& m_;
  const PreferenceProvider& prefs_;
  StrategyProvider& strat_;
  std::vector<ExpandedState> nodes_;
  std::vector<std::vector<std::size_t>> levels_;
  std::map<std::pair<StateIdx, std::vector<int>>, std::size_t> index_;
  std::map<std::vector<std::string>, int> joint_index_;
  std::vector<std::vector<std::string>> joint_;
  std::vector<std::vector<Rational>> rp_;  // [agent][node]
  std::map<std::string, std::vector<std::size_t>> classes_;
  std::map<std::pair<std::size_t, std::string>, Verdict> memo_;
  std::map<std::pair<std::size_t, std::string>, Rational> prob_memo_;
};

}  // namespace asmas
