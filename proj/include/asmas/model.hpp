#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asmas/formula.hpp"
#include "asmas/rational.hpp"

namespace asmas {

using StateIdx = std::size_t;
inline constexpr int kNone = -1;
inline constexpr const char* kSilent = "_";
inline constexpr const char* kSinkId = "_sink";

/// A step tag on a finite path. Cognitive steps carry the agent and the
/// interned goal-set / intention id.
struct Step {
  enum class Kind : std::uint8_t { Temporal, Goal, Intention };
  Kind kind = Kind::Temporal;
  int agent = kNone;
  int value = kNone;

  static Step temporal() { return {}; }
  static Step goal(int a, int x) { return {Kind::Goal, a, x}; }
  static Step intention(int a, int x) { return {Kind::Intention, a, x}; }
  bool cognitive() const { return kind != Kind::Temporal; }
  auto operator<=>(const Step&) const = default;
};

/// Per-observer classification of a step. Equality ignores `action`, which
/// is kept for reporting only.
struct TransitionType {
  enum class Kind : std::uint8_t { Action, OwnGoal, OwnIntention, OtherGoal, OtherIntention };
  Kind kind = Kind::Action;
  int agent = kNone;
  int value = kNone;
  std::vector<int> action;

  bool operator==(const TransitionType& o) const {
    return kind == o.kind && agent == o.agent && value == o.value;
  }
};

enum EnabledBits : unsigned { kEnableTemporal = 1, kEnableGoal = 2, kEnableIntention = 4, kEnableAll = 7 };

using JointAction = std::vector<int>;

struct TemporalEntry {
  JointAction action;
  std::vector<std::pair<StateIdx, Rational>> dist;
};

struct State {
  std::string id;
  std::map<std::string, std::string> locals;
  std::vector<int> goals;      // per agent, goal-set id (0 = empty set)
  std::vector<int> intention;  // per agent, intention id (0 = none)
  std::set<std::string> labels;
  std::vector<std::vector<int>> legal_goals;       // per agent, sorted goal-set ids
  std::vector<std::vector<int>> legal_intentions;  // per agent, sorted intention ids
  std::vector<std::string> obs;                    // per agent
  unsigned enabled = kEnableAll;
  bool sink = false;
};

struct Agent {
  std::string name;
  std::vector<std::string> actions{kSilent};
  std::vector<std::string> goals;                    // universe Goal_A
  std::vector<std::vector<std::string>> goal_sets{{}};  // interned, 0 = {}
  std::vector<std::string> intentions{kSilent};      // 0 = none
  std::map<int, int> intention_follows_goal;         // goal-set id -> intention id

  int action_id(const std::string& a) const;
  int intention_id(const std::string& i) const;
  int find_goal_set(const std::vector<std::string>& gs) const;
  int intern_goal_set(std::vector<std::string> gs);
  std::string goal_set_name(int id) const;
};

/// Intention-implementing local action strategy.
struct LocalStrategy {
  std::map<std::string, Dist<int>> by_state;
  std::map<std::string, Dist<int>> by_obs;
  std::optional<Dist<int>> fallback;
};

/// Declared cognitive strategy entry: used for a path equal to `path`, or for
/// any path ending in `state` when `path` is empty.
struct DeclaredStrategy {
  std::vector<StateIdx> path;
  std::optional<StateIdx> state;
  Dist<int> dist;
};

struct GuardTable {
  bool present = false;
  std::map<int, FormulaPtr> goal;                        // goal-set id -> guard
  std::map<std::pair<int, int>, FormulaPtr> intention;   // (intention, goal-set) -> guard
  bool has_goal = false;
  bool has_intention = false;
};

struct Successor {
  StateIdx to;
  Step step;
  Rational prob;  // induced-chain probability for temporal steps, 0 otherwise
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  bool clean() const { return violations.empty(); }
  bool has(const std::string& code) const;
  std::string summary() const;
};

/// ASMAS with goals and intentions embedded in states. Construct by filling
/// the public members, then call finalize(); afterwards treat as immutable.
class Model {
 public:
  std::string name;
  std::vector<Agent> agents;
  std::set<std::string> propositions;
  std::vector<State> states;
  std::vector<std::pair<StateIdx, Rational>> initial;
  std::vector<std::vector<TemporalEntry>> transitions;  // per state
  bool generate_cognitive_edges = true;
  std::vector<std::tuple<StateIdx, Step, StateIdx>> declared_edges;
  // catalog[agent][intention id]
  std::vector<std::map<int, LocalStrategy>> catalog;
  // goal_prefs[holder][over][state] (missing = uniform over legal set)
  std::vector<std::vector<std::map<StateIdx, Dist<int>>>> goal_prefs, intention_prefs;
  std::vector<GuardTable> guards;                        // per agent
  std::vector<std::vector<GuardTable>> preference_guards;  // [holder][over]
  std::vector<std::vector<DeclaredStrategy>> declared_goal_strategies, declared_intention_strategies;
  bool strict_deterministic = false;
  bool cross_type_weighting = false;

  void finalize();

  std::size_t size() const { return states.size(); }
  std::size_t num_agents() const { return agents.size(); }
  std::size_t non_sink_count() const;
  bool has_sink() const { return sink_.has_value(); }
  const std::vector<std::string>& completed_states() const { return completed_; }

  StateIdx index_of(const std::string& id) const;
  std::optional<StateIdx> find_state(const std::string& id) const;
  int agent_index(const std::string& name) const;
  std::optional<int> find_agent(const std::string& name) const;

  const std::string& obs(int agent, StateIdx s) const { return states[s].obs[agent]; }
  bool label(StateIdx s, const std::string& p) const { return states[s].labels.count(p) != 0; }
  Rational initial_prob(StateIdx s) const;

  /// Act_A(s): action ids of `agent` appearing in defined entries at s.
  std::set<int> available_actions(int agent, StateIdx s) const;
  Dist<JointAction> induced_joint_action(StateIdx s) const;
  /// Induced Markov chain row, positive entries only, ordered by state id.
  const std::vector<std::pair<StateIdx, Rational>>& chain_row(StateIdx s) const;
  Rational chain_prob(StateIdx s, StateIdx t) const;

  std::optional<StateIdx> goal_target(StateIdx s, int agent, int goal_set) const;
  std::optional<StateIdx> intention_target(StateIdx s, int agent, int intention) const;
  std::optional<StateIdx> step_target(StateIdx s, const Step& step) const;

  /// All valid one-step successors, ordered by target id
  /// then step.
  const std::vector<Successor>& successors(StateIdx s) const { return succ_[s]; }
  std::vector<Successor> successors_of_type(int observer, StateIdx s, const TransitionType& t) const;
  bool valid_step(StateIdx s, const Step& step, StateIdx t) const;

  TransitionType classify(int observer, StateIdx from, const Step& step, StateIdx to,
                          bool with_action = true) const;

  Dist<int> goal_preference(int holder, int over, StateIdx s) const;
  Dist<int> intention_preference(int holder, int over, StateIdx s) const;

  const ValidationReport& report() const { return report_; }
  /// Throws ModelError if the validation report is not clean.
  void require_clean() const;

  std::string step_name(const Step& st) const;
  std::string type_name(const TransitionType& t) const;

 private:
  void complete_sink();
  void compile_labels();
  void build_edges();
  void build_chain();
  void build_successors();
  void validate();
  void check_pairs(int observer);
  const LocalStrategy* strategy_for(int agent, int intention) const;

  std::map<std::string, StateIdx> index_;
  std::optional<StateIdx> sink_;
  std::vector<std::string> completed_;
  std::vector<std::vector<std::pair<Step, StateIdx>>> edges_;  // cognitive, per source
  std::vector<std::vector<std::pair<StateIdx, Rational>>> chain_;
  std::vector<std::string> chain_error_;
  std::vector<std::vector<Successor>> succ_;
  ValidationReport report_;
  bool finalized_ = false;
};

}  // namespace asmas
