#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "asmas/rational.hpp"

namespace asmas {

/// One AST for state and path formulas; `is_state()` tells them apart.
enum class Op {
  True, False, Atom, Not, And, Or, Implies,
  Prob, Forall, Exists,
  Goal, Intn, Cap,
  Bel, CT, DT, ST, STQ, WT,
  Next, Until, BUntil, Eventually, BEventually, Always, BAlways, Release,
};

enum class Cmp { Lt, Le, Gt, Ge, Eq };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op = Op::True;
  std::string atom;
  std::string agent1, agent2;
  Cmp cmp = Cmp::Ge;
  bool query = false;
  Rational bound = 0;
  int k = 0;
  std::vector<FormulaPtr> kids;

  const Formula& kid(std::size_t i = 0) const { return *kids[i]; }
};

FormulaPtr make(Op op, std::vector<FormulaPtr> kids = {});
FormulaPtr make_atom(std::string name);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_prob(Cmp c, Rational q, FormulaPtr path);
FormulaPtr make_bel(std::string agent, Cmp c, Rational q, FormulaPtr path, bool query = false);
FormulaPtr make_trust(Op op, std::string a, std::string b, Cmp c, Rational q, FormulaPtr path,
                      bool query = false);
FormulaPtr make_cognitive(Op op, std::string a, FormulaPtr f);
FormulaPtr make_bounded(Op op, int k, std::vector<FormulaPtr> kids);

FormulaPtr parse_formula(std::string_view text);
std::string to_string(const Formula& f);
inline std::string to_string(const FormulaPtr& f) { return to_string(*f); }
bool equal(const Formula& a, const Formula& b);

bool is_temporal(Op op);
bool is_state(const Formula& f);
/// No belief, trust, dependence, goal or intention operator anywhere inside.
bool history_free(const Formula& f);
/// No unbounded temporal operator anywhere inside.
bool bounded(const Formula& f);
/// Number of future temporal steps a bounded path formula inspects.
int horizon(const Formula& f);

bool compare(const Rational& v, Cmp c, const Rational& q);
/// Whether the optimising quantifier for this relation is sup (>=, >).
inline bool upward(Cmp c) { return c == Cmp::Ge || c == Cmp::Gt || c == Cmp::Eq; }
const char* cmp_name(Cmp c);

/// Nesting depth of paths needed to evaluate a BPRTL formula.
int depth(const Formula& f);

enum class Fragment { BPRTL, PQRTL1, GENERAL };
const char* fragment_name(Fragment f);
Fragment classify_fragment(const Formula& f, int max_nesting = 2);
int trust_nesting(const Formula& f);

/// The ψ / operator / bound of a PQRTL1 formula G(ψ => P⋈q F X≥1 ψ).
struct Pqrtl1Parts {
  FormulaPtr psi;
  const Formula* inner = nullptr;  // the B/CT/DT operator
  Cmp cmp = Cmp::Ge;
  Rational q;
};
bool pqrtl1_parts(const Formula& f, Pqrtl1Parts& out);

std::vector<std::string> validate_guard(const Formula& g, const std::string& owner);

/// Unknown agent / proposition names, as error strings.
std::vector<std::string> unresolved_names(const Formula& f, const std::set<std::string>& agents,
                                          const std::set<std::string>& props);

/// F ψ -> true U ψ, G ψ -> ¬(true U ¬ψ), E ψ -> ¬A¬ψ and their bounded forms.
FormulaPtr desugar(const FormulaPtr& f);

}  // namespace asmas
