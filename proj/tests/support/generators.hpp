#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "asmas/formula.hpp"
#include "asmas/model.hpp"
#include "asmas/qualitative.hpp"

namespace asmas::testkit {

/// Random two-agent models: the truster `Ann` and the trustee `Ben`. States
/// are (location, Ben's intention, Ann's goal set) triples; Ben's intentions
/// x / y choose his actions, Ann may change her goal, and the temporal step
/// resets Ben's intention.
struct RandomModelSpec {
  std::uint64_t seed = 1;
  int locations = 3;        // 1..4
  bool full_observation = true;
  bool ann_goals = false;   // doubles the state count
  bool ben_guards = false;  // guard-based intention strategy for Ben
  bool stochastic_actions = true;
};

std::string random_model_document(const RandomModelSpec& spec);
/// Loads the document; throws if the generated model does not validate.
Model random_model(const RandomModelSpec& spec);

/// Random state formula over propositions p, q and agents Ann, Ben. `depth`
/// bounds the nesting of path operators.
struct FormulaGen {
  explicit FormulaGen(std::uint64_t seed) : rng(seed) {}
  FormulaPtr state(int depth);
  FormulaPtr path(int depth);
  std::mt19937_64 rng;

 private:
  int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
  std::string relation(bool query_ok);
};

/// Random sub-stochastic automaton with `states` states over `symbols` symbols.
StochasticAutomaton random_automaton(std::mt19937_64& rng, std::size_t states, std::size_t symbols);
/// Same automaton with states permuted.
StochasticAutomaton renamed(const StochasticAutomaton& a, const std::vector<std::size_t>& perm);
/// Splits state `s` into two copies sharing its incoming mass; equivalent to `a`.
StochasticAutomaton split_state(const StochasticAutomaton& a, std::size_t s, const Rational& share);
/// Perturbs one transition probability (keeping rows sub-stochastic).
StochasticAutomaton perturbed(const StochasticAutomaton& a, std::mt19937_64& rng);

/// Equality of word probabilities for every word up to length `max_len`.
bool words_agree(const StochasticAutomaton& a, const StochasticAutomaton& b, std::size_t max_len);

}  // namespace asmas::testkit
