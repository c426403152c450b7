#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asmas/linalg.hpp"
#include "asmas/prob.hpp"

namespace asmas {

/// Stochastic automaton (Q, A, α, PI): trans[a] holds the rows of α(·, a, ·).
struct StochasticAutomaton {
  std::size_t states = 0;
  std::vector<Rational> init;
  std::vector<SparseRows> trans;  // one entry per symbol

  std::size_t symbols() const { return trans.size(); }
};

/// Probability that the automaton generates `word` (sum over end states).
Rational word_probability(const StochasticAutomaton& sa, const std::vector<int>& word);
/// Whether both automata give every word the same probability. Symbols are
/// shared by index; a missing symbol has the zero matrix.
bool tzeng_equivalent(const StochasticAutomaton& a, const StochasticAutomaton& b);

/// Two copies of the induced chain synchronised on the observer's
/// observations; the second copy only enters `bad` states.
struct ProductSystem {
  struct Edge {
    std::size_t to;
    Rational w1, w2;  // first- and second-copy weights
  };
  int observer = 0;
  std::vector<std::pair<StateIdx, StateIdx>> states;
  std::vector<std::vector<Edge>> edges;
  std::vector<std::size_t> initial;
  std::map<std::pair<StateIdx, StateIdx>, std::size_t> index;
};

struct SccComponent {
  std::vector<std::size_t> members;  // product state indices, sorted
  bool cyclic = false;               // has an internal edge
  bool closed1 = false, closed2 = false;
  bool internal_equivalent = false;
  bool formula_specific = false;

  bool double_closed() const { return cyclic && closed1 && closed2; }
  bool qualifying() const { return double_closed() && internal_equivalent && formula_specific; }
};

/// M ⊨ □(ψ ⇒ □ψ) on the chain-reachable part; `offending` receives a
/// violating edge.
bool check_precondition(const Model& m, const std::vector<bool>& psi,
                        std::pair<StateIdx, StateIdx>* offending = nullptr);

ProductSystem build_product(const Model& m, int observer, const std::vector<bool>& bad);
/// Tarjan SCCs of the product with their flags; `psi` marks ψ-states of M.
std::vector<SccComponent> classify_sccs(const Model& m, const ProductSystem& prod, const std::vector<bool>& psi);

/// States of M reachable from μ0 in the induced chain.
std::vector<bool> chain_reachable(const Model& m);

struct QualitativeResult {
  bool verdict = true;
  Op variant = Op::Bel;
  std::vector<bool> psi, bad;
  ProductSystem product;
  std::vector<SccComponent> sccs;
  struct Seed {
    StateIdx s, t;
    Rational p;
  };
  std::vector<Seed> seeds;
  /// p per reachable ψ-state (maximum over its seeds, 0 without seeds).
  std::map<StateIdx, Rational> reach;
  std::optional<StateIdx> witness;
  std::vector<std::string> warnings;
};

/// Decides G(ψ ⇒ P⋈q F X≥1 ψ) for X ∈ {B_A, CT_{A,B}, DT_{A,B}} on the
/// induced chain. `strategies` supplies ζ^i_B at single-state paths for DT.
QualitativeResult check_qualitative(const Model& m, const Formula& phi, StrategyProvider& strategies);

std::string dump_sccs(const Model& m, const QualitativeResult& r);

}  // namespace asmas
