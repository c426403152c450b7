#include "asmas/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "asmas/error.hpp"

namespace asmas {

FormulaPtr make(Op op, std::vector<FormulaPtr> kids) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->kids = std::move(kids);
  return f;
}

FormulaPtr make_atom(std::string name) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Atom;
  f->atom = std::move(name);
  return f;
}

FormulaPtr make_not(FormulaPtr f) { return make(Op::Not, {std::move(f)}); }

FormulaPtr make_prob(Cmp c, Rational q, FormulaPtr path) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Prob;
  f->cmp = c;
  f->query = c == Cmp::Eq;
  f->bound = std::move(q);
  f->kids = {std::move(path)};
  return f;
}

FormulaPtr make_bel(std::string agent, Cmp c, Rational q, FormulaPtr path, bool query) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Bel;
  f->agent1 = std::move(agent);
  f->cmp = c;
  f->query = query || c == Cmp::Eq;
  f->bound = std::move(q);
  f->kids = {std::move(path)};
  return f;
}

FormulaPtr make_trust(Op op, std::string a, std::string b, Cmp c, Rational q, FormulaPtr path,
                      bool query) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->agent1 = std::move(a);
  f->agent2 = std::move(b);
  f->cmp = c;
  f->query = query || c == Cmp::Eq;
  f->bound = std::move(q);
  f->kids = {std::move(path)};
  return f;
}

FormulaPtr make_cognitive(Op op, std::string a, FormulaPtr sub) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->agent1 = std::move(a);
  f->kids = {std::move(sub)};
  return f;
}

FormulaPtr make_bounded(Op op, int k, std::vector<FormulaPtr> kids) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->k = k;
  f->kids = std::move(kids);
  return f;
}

bool is_temporal(Op op) {
  switch (op) {
    case Op::Next: case Op::Until: case Op::BUntil: case Op::Eventually:
    case Op::BEventually: case Op::Always: case Op::BAlways: case Op::Release:
      return true;
    default:
      return false;
  }
}

bool is_state(const Formula& f) {
  if (is_temporal(f.op)) return false;
  if (f.op == Op::Not || f.op == Op::And || f.op == Op::Or || f.op == Op::Implies)
    return std::all_of(f.kids.begin(), f.kids.end(), [](auto& k) { return is_state(*k); });
  return true;
}

bool history_free(const Formula& f) {
  switch (f.op) {
    case Op::Bel: case Op::CT: case Op::DT: case Op::ST: case Op::STQ: case Op::WT:
    case Op::Goal: case Op::Intn:
      return false;
    default:
      return std::all_of(f.kids.begin(), f.kids.end(), [](auto& k) { return history_free(*k); });
  }
}

bool bounded(const Formula& f) {
  switch (f.op) {
    case Op::Until: case Op::Eventually: case Op::Always: case Op::Release:
      return false;
    default:
      return std::all_of(f.kids.begin(), f.kids.end(), [](auto& k) { return bounded(*k); });
  }
}

int horizon(const Formula& f) {
  if (is_state(f)) return 0;
  int m = 0;
  for (auto& k : f.kids) m = std::max(m, horizon(*k));
  switch (f.op) {
    case Op::Next: return m + 1;
    case Op::BUntil: case Op::BEventually: case Op::BAlways: return m + f.k;
    default: return m;
  }
}

bool compare(const Rational& v, Cmp c, const Rational& q) {
  switch (c) {
    case Cmp::Lt: return v < q;
    case Cmp::Le: return v <= q;
    case Cmp::Gt: return v > q;
    case Cmp::Ge: return v >= q;
    case Cmp::Eq: return v == q;
  }
  return false;
}

const char* cmp_name(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
    case Cmp::Eq: return "=";
  }
  return "?";
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind;
  std::string text;
  int line, col;
};

const std::set<std::string> kKeywords = {
    "true", "false", "P", "A", "E", "B", "CT", "DT", "ST", "WT",
    "GOAL", "INTN", "CAP", "X", "F", "G", "U", "R"};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto adv = [&](size_t n) {
    for (size_t j = 0; j < n; ++j) {
      if (s[i] == '\n') { ++line; col = 1; } else { ++col; }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { adv(1); continue; }
    int l = line, cc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '.')) ++j;
      out.push_back({Token::Ident, std::string(s.substr(i, j - i)), l, cc});
      adv(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' || s[j] == '/')) ++j;
      out.push_back({Token::Number, std::string(s.substr(i, j - i)), l, cc});
      adv(j - i);
    } else {
      static const char* two[] = {"<=", ">=", "=>"};
      bool done = false;
      for (auto t : two)
        if (s.substr(i, 2) == t) {
          out.push_back({Token::Punct, t, l, cc});
          adv(2);
          done = true;
          break;
        }
      if (done) continue;
      if (std::string("()[]{},!&|=?<>").find(c) == std::string::npos)
        throw ParseError("unexpected character '" + std::string(1, c) + "' at line " +
                             std::to_string(l) + ", column " + std::to_string(cc),
                         l, cc);
      out.push_back({Token::Punct, std::string(1, c), l, cc});
      adv(1);
    }
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> t) : toks_(std::move(t)) {}

  FormulaPtr top() {
    auto f = as_state(expr());
    if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(size_t o = 0) const { return toks_[std::min(pos_ + o, toks_.size() - 1)]; }
  bool is(const char* p, size_t o = 0) const {
    auto& t = peek(o);
    return (t.kind == Token::Punct || t.kind == Token::Ident) && t.text == p;
  }
  bool accept(const char* p) {
    if (is(p)) { ++pos_; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    auto& t = peek();
    throw ParseError("syntax error at line " + std::to_string(t.line) + ", column " +
                         std::to_string(t.col) + ": " + msg,
                     t.line, t.col);
  }
  void expect(const char* p) {
    if (!accept(p)) fail(std::string("expected '") + p + "'" +
                         (peek().kind == Token::End ? " at end of input" : ", found '" + peek().text + "'"));
  }
  std::string ident() {
    auto& t = peek();
    if (t.kind != Token::Ident || kKeywords.count(t.text)) fail("expected identifier");
    ++pos_;
    return t.text;
  }
  int integer() {
    auto& t = peek();
    if (t.kind != Token::Number || t.text.find_first_of("./") != std::string::npos)
      fail("expected step bound");
    ++pos_;
    return std::stoi(t.text);
  }

  static FormulaPtr as_state(FormulaPtr f) {
    return is_state(*f) ? f : make(Op::Forall, {std::move(f)});
  }

  FormulaPtr expr() {
    auto l = disj();
    if (accept("=>")) return make(Op::Implies, {l, expr()});
    return l;
  }
  FormulaPtr disj() {
    auto l = conj();
    while (accept("|")) l = make(Op::Or, {l, conj()});
    return l;
  }
  FormulaPtr conj() {
    auto l = until();
    while (accept("&")) l = make(Op::And, {l, until()});
    return l;
  }
  FormulaPtr until() {
    auto l = unary();
    if (accept("U")) {
      if (accept("<=")) {
        int k = integer();
        return make_bounded(Op::BUntil, k, {l, until()});
      }
      return make(Op::Until, {l, until()});
    }
    if (accept("R")) return make(Op::Release, {l, until()});
    return l;
  }
  FormulaPtr unary() {
    if (accept("!")) return make_not(unary());
    if (accept("X")) return make(Op::Next, {unary()});
    if (is("F") || is("G")) {
      bool ev = is("F");
      ++pos_;
      if (accept("<=")) {
        int k = integer();
        return make_bounded(ev ? Op::BEventually : Op::BAlways, k, {unary()});
      }
      return make(ev ? Op::Eventually : Op::Always, {unary()});
    }
    return primary();
  }

  // comparison followed by a bound or '?'; `allow_value` false for WT
  void relation(Formula& f, bool allow_query, bool allow_value) {
    auto& t = peek();
    if (accept(">=")) f.cmp = Cmp::Ge;
    else if (accept("<=")) f.cmp = Cmp::Le;
    else if (accept(">")) f.cmp = Cmp::Gt;
    else if (accept("<")) f.cmp = Cmp::Lt;
    else if (accept("=")) f.cmp = Cmp::Eq;
    else fail("expected comparison operator");
    if (!allow_value) {
      if (f.cmp == Cmp::Eq) fail("'=' is not a relation here");
      return;
    }
    if (accept("?")) {
      if (!allow_query) fail("query form not allowed here");
      f.query = true;
      return;
    }
    if (f.cmp == Cmp::Eq) fail("'=' must be followed by '?'");
    auto& n = peek();
    if (n.kind != Token::Number) fail("expected probability bound");
    ++pos_;
    try {
      f.bound = parse_rational(n.text, true);
    } catch (const ParseError&) {
      pos_--;
      fail("malformed probability bound '" + n.text + "'");
    }
    if (f.bound < 0 || f.bound > 1) {
      pos_--;
      fail("probability bound " + n.text + " outside [0,1]");
    }
    (void)t;
  }
  FormulaPtr bracket() {
    expect("[");
    auto p = expr();
    expect("]");
    return p;
  }
  void agents(Formula& f, int n) {
    expect("{");
    f.agent1 = ident();
    if (n == 2) {
      expect(",");
      f.agent2 = ident();
    }
    expect("}");
  }

  FormulaPtr primary() {
    auto& t = peek();
    if (accept("(")) {
      auto f = expr();
      expect(")");
      return f;
    }
    if (is("[")) return bracket();
    if (t.kind != Token::Ident) fail(t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    if (accept("true")) return make(Op::True);
    if (accept("false")) return make(Op::False);
    if (accept("A")) return make(Op::Forall, {bracket()});
    if (accept("E")) return make(Op::Exists, {bracket()});
    if (accept("P")) {
      auto f = std::make_shared<Formula>();
      f->op = Op::Prob;
      relation(*f, true, true);
      f->kids = {bracket()};
      return f;
    }
    if (accept("B")) {
      auto f = std::make_shared<Formula>();
      f->op = Op::Bel;
      agents(*f, 1);
      relation(*f, true, true);
      f->kids = {bracket()};
      return f;
    }
    for (auto [kw, op] : {std::pair{"CT", Op::CT}, std::pair{"DT", Op::DT}}) {
      if (accept(kw)) {
        auto f = std::make_shared<Formula>();
        f->op = op;
        agents(*f, 2);
        relation(*f, true, true);
        if (f->query && f->cmp == Cmp::Eq) f->cmp = Cmp::Ge;
        f->kids = {bracket()};
        return f;
      }
    }
    if (accept("ST")) {
      auto f = std::make_shared<Formula>();
      agents(*f, 2);
      if (is(">=") || is(">") || is("<=") || is("<") || is("=")) {
        f->op = Op::ST;
        relation(*f, false, true);
        f->kids = {bracket()};
      } else {
        f->op = Op::STQ;
        f->kids = {as_state(unary())};
      }
      return f;
    }
    if (accept("WT")) {
      auto f = std::make_shared<Formula>();
      f->op = Op::WT;
      agents(*f, 2);
      relation(*f, false, false);
      f->kids = {bracket()};
      return f;
    }
    for (auto [kw, op] : {std::pair{"GOAL", Op::Goal}, std::pair{"INTN", Op::Intn}, std::pair{"CAP", Op::Cap}}) {
      if (accept(kw)) {
        auto f = std::make_shared<Formula>();
        f->op = op;
        agents(*f, 1);
        f->kids = {as_state(unary())};
        return f;
      }
    }
    std::string name = ident();
    if (accept("=")) {
      auto& v = peek();
      if (v.kind != Token::Ident && v.kind != Token::Number) fail("expected value after '='");
      ++pos_;
      name += "=" + v.text;
    }
    return make_atom(name);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(tokenize(text)).top(); }

// ---------------------------------------------------------------- printing

namespace {

std::string bound_text(const Formula& f) {
  if (f.query) return std::string(f.cmp == Cmp::Eq ? "=" : cmp_name(f.cmp)) + "?";
  return std::string(cmp_name(f.cmp)) + to_string(f.bound);
}

}  // namespace

std::string to_string(const Formula& f) {
  auto k = [&](size_t i) { return to_string(*f.kids[i]); };
  auto br = [&](size_t i) { return " [ " + k(i) + " ]"; };
  switch (f.op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return f.atom;
    case Op::Not: return "!" + k(0);
    case Op::And: return "(" + k(0) + " & " + k(1) + ")";
    case Op::Or: return "(" + k(0) + " | " + k(1) + ")";
    case Op::Implies: return "(" + k(0) + " => " + k(1) + ")";
    case Op::Until: return "(" + k(0) + " U " + k(1) + ")";
    case Op::BUntil: return "(" + k(0) + " U<=" + std::to_string(f.k) + " " + k(1) + ")";
    case Op::Release: return "(" + k(0) + " R " + k(1) + ")";
    case Op::Next: return "X " + k(0);
    case Op::Eventually: return "F " + k(0);
    case Op::BEventually: return "F<=" + std::to_string(f.k) + " " + k(0);
    case Op::Always: return "G " + k(0);
    case Op::BAlways: return "G<=" + std::to_string(f.k) + " " + k(0);
    case Op::Prob: return "P" + bound_text(f) + br(0);
    case Op::Forall: return "A" + br(0);
    case Op::Exists: return "E" + br(0);
    case Op::Bel: return "B{" + f.agent1 + "}" + bound_text(f) + br(0);
    case Op::CT: return "CT{" + f.agent1 + "," + f.agent2 + "}" + bound_text(f) + br(0);
    case Op::DT: return "DT{" + f.agent1 + "," + f.agent2 + "}" + bound_text(f) + br(0);
    case Op::ST: return "ST{" + f.agent1 + "," + f.agent2 + "}" + bound_text(f) + br(0);
    case Op::WT: return "WT{" + f.agent1 + "," + f.agent2 + "}" + cmp_name(f.cmp) + br(0);
    case Op::STQ: return "ST{" + f.agent1 + "," + f.agent2 + "} " + k(0);
    case Op::Goal: return "GOAL{" + f.agent1 + "} " + k(0);
    case Op::Intn: return "INTN{" + f.agent1 + "} " + k(0);
    case Op::Cap: return "CAP{" + f.agent1 + "} " + k(0);
  }
  return "?";
}

bool equal(const Formula& a, const Formula& b) {
  if (a.op != b.op || a.atom != b.atom || a.agent1 != b.agent1 || a.agent2 != b.agent2 ||
      a.k != b.k || a.kids.size() != b.kids.size())
    return false;
  bool rel = a.op == Op::Prob || a.op == Op::Bel || a.op == Op::CT || a.op == Op::DT ||
             a.op == Op::ST || a.op == Op::WT;
  if (rel && (a.cmp != b.cmp || a.query != b.query)) return false;
  if (rel && !a.query && a.bound != b.bound) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------- depth / fragments

int depth(const Formula& f) {
  auto d = [&](size_t i) { return depth(*f.kids[i]); };
  switch (f.op) {
    case Op::True: case Op::False: case Op::Atom: return 0;
    case Op::Not: case Op::Forall: case Op::Exists: case Op::Prob: case Op::Bel: return d(0);
    case Op::And: case Op::Or: case Op::Implies: return std::max(d(0), d(1));
    case Op::Next: case Op::Goal: case Op::Intn: case Op::Cap:
    case Op::CT: case Op::DT: case Op::ST: case Op::WT:
      return d(0) + 1;
    case Op::STQ: return d(0) + 2;
    case Op::BUntil: return f.k + std::max(d(0), d(1));
    case Op::BEventually: case Op::BAlways: return f.k + d(0);
    case Op::Until: case Op::Eventually: case Op::Always: case Op::Release:
      throw FragmentError("depth undefined: unbounded temporal operator in '" + to_string(f) + "'");
  }
  return 0;
}

int trust_nesting(const Formula& f) {
  int m = 0;
  for (auto& k : f.kids) m = std::max(m, trust_nesting(*k));
  switch (f.op) {
    case Op::Bel: case Op::CT: case Op::DT: case Op::ST: case Op::WT: return m + 1;
    default: return m;
  }
}

namespace {

bool takes_path(Op op) {
  switch (op) {
    case Op::Prob: case Op::Forall: case Op::Exists: case Op::Bel: case Op::CT:
    case Op::DT: case Op::ST: case Op::WT:
      return true;
    default:
      return false;
  }
}

// Every temporal operator is the whole path argument of a quantifying
// operator and has state-formula operands.
bool bprtl_shape(const Formula& f) {
  if (is_temporal(f.op)) return false;
  if (takes_path(f.op)) {
    const Formula& p = f.kid();
    if (is_temporal(p.op)) {
      if (!bounded(p)) return false;
      for (auto& k : p.kids)
        if (!is_state(*k) || !bprtl_shape(*k)) return false;
      return true;
    }
    return is_state(p) && bprtl_shape(p);
  }
  return std::all_of(f.kids.begin(), f.kids.end(), [](auto& k) { return bprtl_shape(*k); });
}

}  // namespace

bool pqrtl1_parts(const Formula& f, Pqrtl1Parts& out) {
  if (f.op != Op::Forall || f.kid().op != Op::Always) return false;
  const Formula& imp = f.kid().kid();
  if (imp.op != Op::Implies) return false;
  const Formula& psi = imp.kid(0);
  const Formula& pr = imp.kid(1);
  if (pr.op != Op::Prob || pr.query || pr.kid().op != Op::Eventually) return false;
  const Formula& inner = pr.kid().kid();
  if (inner.op != Op::Bel && inner.op != Op::CT && inner.op != Op::DT) return false;
  if (inner.query || inner.cmp != Cmp::Ge || inner.bound != 1) return false;
  if (!equal(inner.kid(), psi)) return false;
  if (!is_state(psi) || !history_free(psi)) return false;
  out.psi = imp.kids[0];
  out.inner = &inner;
  out.cmp = pr.cmp;
  out.q = pr.bound;
  return true;
}

Fragment classify_fragment(const Formula& f, int max_nesting) {
  if (bounded(f) && bprtl_shape(f) && trust_nesting(f) <= max_nesting) return Fragment::BPRTL;
  Pqrtl1Parts parts;
  if (pqrtl1_parts(f, parts)) return Fragment::PQRTL1;
  return Fragment::GENERAL;
}

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::BPRTL: return "BPRTL";
    case Fragment::PQRTL1: return "PQRTL1";
    case Fragment::GENERAL: return "GENERAL";
  }
  return "?";
}

// ---------------------------------------------------------------- guards

namespace {

bool contains_temporal(const Formula& f) {
  if (is_temporal(f.op)) return true;
  return std::any_of(f.kids.begin(), f.kids.end(), [](auto& k) { return contains_temporal(*k); });
}

bool contains_query(const Formula& f) {
  bool q = f.query && takes_path(f.op);
  return q || std::any_of(f.kids.begin(), f.kids.end(), [](auto& k) { return contains_query(*k); });
}

void guard_layer(const Formula& f, const std::string& owner, bool top, std::vector<std::string>& out) {
  switch (f.op) {
    case Op::True: case Op::False: case Op::Atom: return;
    case Op::Not: case Op::And: case Op::Or: case Op::Implies:
      for (auto& k : f.kids) guard_layer(*k, owner, false, out);
      return;
    case Op::Bel: case Op::CT: case Op::DT: case Op::ST: case Op::WT:
      if (f.agent1 != owner) {
        out.push_back("modal operator outside a belief operator of " + owner + ": " + to_string(f));
        return;
      }
      if (f.query && !top) out.push_back("quantitative formula must be the entire guard: " + to_string(f));
      if (contains_temporal(f.kid())) out.push_back("temporal operator inside guard belief: " + to_string(f));
      if (contains_query(f.kid())) out.push_back("quantitative formula must be the entire guard: " + to_string(f));
      return;
    default:
      out.push_back("modal operator outside a belief operator of " + owner + ": " + to_string(f));
  }
}

}  // namespace

std::vector<std::string> validate_guard(const Formula& g, const std::string& owner) {
  std::vector<std::string> out;
  guard_layer(g, owner, true, out);
  return out;
}

std::vector<std::string> unresolved_names(const Formula& f, const std::set<std::string>& agents,
                                          const std::set<std::string>& props) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op == Op::Atom && !props.count(g.atom)) out.push_back("unknown proposition '" + g.atom + "'");
    for (auto* a : {&g.agent1, &g.agent2})
      if (!a->empty() && !agents.count(*a)) out.push_back("unknown agent '" + *a + "'");
    for (auto& k : g.kids) walk(*k);
  };
  walk(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FormulaPtr desugar(const FormulaPtr& f) {
  std::vector<FormulaPtr> kids;
  for (auto& k : f->kids) kids.push_back(desugar(k));
  auto copy = [&]() {
    auto g = std::make_shared<Formula>(*f);
    g->kids = kids;
    return FormulaPtr(g);
  };
  switch (f->op) {
    case Op::Eventually: return make(Op::Until, {make(Op::True), kids[0]});
    case Op::BEventually: return make_bounded(Op::BUntil, f->k, {make(Op::True), kids[0]});
    case Op::Always: return make_not(make(Op::Until, {make(Op::True), make_not(kids[0])}));
    case Op::BAlways: return make_not(make_bounded(Op::BUntil, f->k, {make(Op::True), make_not(kids[0])}));
    case Op::Release: return make_not(make(Op::Until, {make_not(kids[0]), make_not(kids[1])}));
    case Op::Exists: return make_not(make(Op::Forall, {make_not(kids[0])}));
    default: return copy();
  }
}

}  // namespace asmas
