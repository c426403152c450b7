#pragma once

#include <functional>

#include "asmas/formula.hpp"
#include "asmas/linalg.hpp"
#include "asmas/model.hpp"
#include "asmas/path.hpp"

namespace asmas {

/// A's preference functions over other agents, possibly history dependent.
class PreferenceProvider {
 public:
  virtual ~PreferenceProvider() = default;
  virtual Dist<int> goal(int holder, int over, const FinitePath& prefix) const = 0;
  virtual Dist<int> intention(int holder, int over, const FinitePath& prefix) const = 0;
};

/// State-defined preferences of the model (π^g, π^i).
class ModelPreferences : public PreferenceProvider {
 public:
  explicit ModelPreferences(const Model& m) : m_(m) {}
  Dist<int> goal(int holder, int over, const FinitePath& p) const override {
    return m_.goal_preference(holder, over, p.last());
  }
  Dist<int> intention(int holder, int over, const FinitePath& p) const override {
    return m_.intention_preference(holder, over, p.last());
  }

 private:
  const Model& m_;
};

/// Cognitive strategies ζ^g_A, ζ^i_A.
class StrategyProvider {
 public:
  virtual ~StrategyProvider() = default;
  virtual Dist<int> goal(int agent, const FinitePath& p) = 0;
  virtual Dist<int> intention(int agent, const FinitePath& p) = 0;
  /// Whether own steps of this dimension are weighted in cross-type mode.
  virtual bool weighted(int agent, Step::Kind kind) const = 0;
};

/// Uniform over the legal set; never weighted.
class UniformStrategies : public StrategyProvider {
 public:
  explicit UniformStrategies(const Model& m) : m_(m) {}
  Dist<int> goal(int agent, const FinitePath& p) override;
  Dist<int> intention(int agent, const FinitePath& p) override;
  bool weighted(int, Step::Kind) const override { return false; }

 private:
  const Model& m_;
};

/// T_A for the step from prefix.last() to `to`.
Rational aux_transition(const Model& m, const PreferenceProvider& prefs, int observer,
                        const FinitePath& prefix, const Step& step, StateIdx to);

/// Pr_A(ρ). In cross-type mode, own cognitive steps of weighted dimensions
/// use the agent's strategy value.
Rational path_probability(const Model& m, const PreferenceProvider& prefs, int observer, const FinitePath& rho,
                          bool cross_type = false, StrategyProvider* strategies = nullptr);

/// Evaluates a state formula at a path (callback into the semantics).
using StateEval = std::function<bool(const FinitePath&, const Formula&)>;

/// Probability that a temporal continuation of ρ in the induced chain
/// satisfies ψ.
Rational prob_path_formula(const Model& m, const FinitePath& rho, const Formula& psi, const StateEval& ev);

}  // namespace asmas
