#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asmas/prob.hpp"

namespace asmas {

/// What an agent sees of a path: observations and per-step types.
struct ObservationTrace {
  int observer = 0;
  std::vector<std::string> obs;
  std::vector<TransitionType> types;

  bool operator==(const ObservationTrace& o) const {
    return observer == o.observer && obs == o.obs && types == o.types;
  }
};

ObservationTrace trace_of(const Model& m, int observer, const FinitePath& p);
/// Canonical text, usable as a memo key.
std::string trace_key(const Model& m, const ObservationTrace& t);

/// "o(s0) Alice.g o(s1)": o(<state>) is the observer's observation of a
/// state, obs:<text> a raw observation; between two observations an optional
/// type token (action, <B>.g, <B>.i, own <A>.g.{..} / <A>.i.<x>) defaults to action.
ObservationTrace parse_trace(const Model& m, int observer, std::string_view text);

/// class(o): all valid initialized paths with the given trace.
std::vector<FinitePath> obs_class(const Model& m, const ObservationTrace& o);

/// be_A(o): positive-belief paths with their conditional probabilities.
struct BeliefAssignment {
  ObservationTrace trace;
  std::vector<std::pair<FinitePath, Rational>> entries;

  Rational of(const FinitePath& p) const;
};

BeliefAssignment belief_assignment(const Model& m, const PreferenceProvider& prefs, const ObservationTrace& o);
Rational belief(const Model& m, const PreferenceProvider& prefs, const ObservationTrace& o, const FinitePath& rho);
/// Recursive Bayesian update of be_A by one step.
BeliefAssignment belief_update_step(const Model& m, const PreferenceProvider& prefs, const BeliefAssignment& prior,
                                    const std::string& next_obs, const TransitionType& next_type);
/// Folds belief_update_step over the whole trace starting from the initial class.
BeliefAssignment belief_recursive(const Model& m, const PreferenceProvider& prefs, const ObservationTrace& o);

using BeliefState = Dist<StateIdx>;

BeliefState belief_initial(const Model& m, int observer, const std::string& o);
/// b^{kind,o} and T^Bel(b,kind)(b^{kind,o}); nullopt when the combination has
/// probability zero.
std::optional<std::pair<BeliefState, Rational>> belief_successor(const Model& m, int observer, const BeliefState& b,
                                                                 const TransitionType& kind, const std::string& o);
/// All realizable (observation, successor, probability) triples for a kind.
std::vector<std::tuple<std::string, BeliefState, Rational>> belief_successors(const Model& m, int observer,
                                                                              const BeliefState& b,
                                                                              const TransitionType& kind);
/// Kinds enabled from some state in the support of b.
std::vector<TransitionType> belief_kinds(const Model& m, int observer, const BeliefState& b);
/// Belief state reached by following a path's trace from b_init.
BeliefState belief_state_of(const Model& m, int observer, const FinitePath& p);

/// Lazily explored belief ASMAS Bel_A(M) up to a depth bound.
struct BeliefAsmas {
  struct Edge {
    std::size_t from, to;
    TransitionType kind;
    std::string obs;
    Rational prob;
  };
  std::vector<BeliefState> nodes;
  std::vector<std::size_t> level;
  std::vector<Edge> edges;
  bool truncated = false;
};
BeliefAsmas explore_belief_asmas(const Model& m, int observer, std::size_t depth);

std::string to_string(const Model& m, const BeliefState& b);

}  // namespace asmas
