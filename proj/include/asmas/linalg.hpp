#pragma once

#include <vector>

#include "asmas/rational.hpp"

namespace asmas {

/// Sparse (sub-)stochastic matrix rows: row[i] = {(j, weight)}.
using SparseRows = std::vector<std::vector<std::pair<std::size_t, Rational>>>;

/// Solves A x = b exactly by Gauss-Jordan elimination; throws on singular A.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

/// Least fixed point of x = [target] + [safe \ target] * P x.
/// prob-0 and prob-1 states are identified on the graph before elimination.
std::vector<Rational> solve_until(const SparseRows& rows, const std::vector<bool>& safe,
                                  const std::vector<bool>& target);

/// Unique stationary distribution of an irreducible stochastic chain.
std::vector<Rational> stationary(const SparseRows& rows);

}  // namespace asmas
