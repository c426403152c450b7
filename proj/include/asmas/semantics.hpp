#pragma once

#include <map>
#include <string>
#include <utility>

#include "asmas/belief.hpp"
#include "asmas/prob.hpp"

namespace asmas {

/// Result of evaluating a state formula: a truth value, or a number for
/// query forms (=?, >=?, ...).
struct Verdict {
  bool numeric = false;
  bool truth = false;
  Rational value = 0;

  static Verdict boolean(bool b) { return {false, b, b ? Rational(1) : Rational(0)}; }
  static Verdict number(Rational v) { return {true, false, std::move(v)}; }
  std::string str() const;
};

enum class BeliefMode {
  PathClass,    ///< expectation over the observation class of the path
  BeliefState,  ///< expectation over the belief state reached in Bel_A(M)
};

/// Recursive evaluator for state formulas on finite paths.
class Evaluator {
 public:
  /// `model_prefs` tells whether `prefs` are the model's own state-defined
  /// preferences; belief-state mode requires it.
  Evaluator(const Model& m, const PreferenceProvider& prefs, StrategyProvider& strategies,
            BeliefMode mode = BeliefMode::PathClass, bool model_prefs = true);

  Verdict eval(const FinitePath& rho, const Formula& f);
  /// Boolean evaluation; raises `unsupported-formula` on a query form.
  bool holds(const FinitePath& rho, const Formula& f);

  /// Probability of the path formula ψ from ρ in the induced chain.
  Rational prob(const FinitePath& rho, const Formula& psi);
  /// E_{be_A}[Pr(ψ)] for the class of ρ.
  Rational belief_value(const FinitePath& rho, int agent, const Formula& psi);
  /// Belief-weighted optimum over B's legal (CT) or possible (DT) intentions.
  Rational ct_value(const FinitePath& rho, int a, int b, Cmp c, const Formula& psi);
  Rational dt_value(const FinitePath& rho, int a, int b, Cmp c, const Formula& psi);
  /// The two sides of WT_{A,B}: B's preference-weighted value and A's own best.
  std::pair<Rational, Rational> wt_sides(const FinitePath& rho, int a, int b, Cmp c, const Formula& psi);

  const BeliefAssignment& class_of(int agent, const FinitePath& rho);
  const BeliefState& belief_state(int agent, const FinitePath& rho);

  const Model& model() const { return m_; }
  BeliefMode mode() const { return mode_; }
  void clear();
  std::size_t memo_size() const { return memo_.size(); }

 private:
  Verdict eval_uncached(const FinitePath& rho, const Formula& f);
  Verdict threshold(const Formula& f, const Rational& v);
  Rational intention_opt(const FinitePath& p, int b, const std::vector<int>& xs, bool sup, const Formula& psi,
                         const char* empty_kind);
  Dist<int> dt_support(const FinitePath& rho, int a, int b, StateIdx s);
  int agent(const std::string& name) const;

  const Model& m_;
  const PreferenceProvider& prefs_;
  StrategyProvider& strat_;
  BeliefMode mode_;
  bool model_prefs_;
  // keyed by canonical formula text, so formulas need not outlive the cache
  std::map<std::pair<FinitePath, std::string>, Verdict> memo_;
  std::map<std::pair<FinitePath, std::string>, Rational> prob_memo_;
  std::map<std::string, BeliefAssignment> classes_;
  std::map<std::string, BeliefState> bstates_;
};

/// Positive-probability support of a distribution, in key order.
std::vector<int> support(const Dist<int>& d);

}  // namespace asmas
