#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "asmas/path.hpp"
#include "asmas/prob.hpp"

namespace asmas {

/// One scheduled move from the end of a path.
struct Move {
  Step step;
  StateIdx to;
  Rational prob;
};

/// Moves available after ρ under the execution schedule: the first agent (in
/// declaration order) with a legal goal change samples its goal strategy;
/// otherwise the first with a legal intention change samples its intention
/// strategy; otherwise the induced chain takes a temporal step.
std::vector<Move> scheduled_moves(const Model& m, StrategyProvider& strategies, const FinitePath& rho);

/// Probability of ρ under the execution schedule, from μ0.
Rational execution_probability(const Model& m, StrategyProvider& strategies, const FinitePath& rho);

/// Samples a path of `steps` moves. Deterministic for a fixed seed.
FinitePath simulate_path(const Model& m, StrategyProvider& strategies, std::mt19937_64& rng, std::size_t steps);

}  // namespace asmas
