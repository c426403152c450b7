#include <gtest/gtest.h>

#include <cmath>

#include "asmas/bounded.hpp"
#include "asmas/error.hpp"
#include "asmas/io.hpp"
#include "asmas/linalg.hpp"
#include "asmas/pipeline.hpp"
#include "asmas/qualitative.hpp"
#include "asmas/simulate.hpp"
#include "support/generators.hpp"
#include "support/shadow.hpp"

using namespace asmas;
using testkit::ShadowShape;
using testkit::ShadowSpec;

namespace {

Model trust_game() { return load_model_file(std::string(ASMAS_FIXTURES) + "/trust_game.json"); }

const char* kReach = "G (good => P>=1/2 [ F B{Obs}>=1 [ good ] ])";

}  // namespace

TEST(Linalg, SolveLinear) {
  auto x = solve_linear({{2, 1}, {1, 3}}, {3, 5});
  EXPECT_EQ(x[0], Rational(4, 5));
  EXPECT_EQ(x[1], Rational(7, 5));
  EXPECT_THROW(solve_linear({{1, 2}, {2, 4}}, {1, 2}), Error);
}

TEST(Linalg, SolveUntilGamblersRuin) {
  // 0 and 3 absorbing; fair steps in between
  SparseRows rows(4);
  rows[0] = {{0, 1}};
  rows[1] = {{0, Rational(1, 2)}, {2, Rational(1, 2)}};
  rows[2] = {{1, Rational(1, 2)}, {3, Rational(1, 2)}};
  rows[3] = {{3, 1}};
  auto x = solve_until(rows, {true, true, true, true}, {false, false, false, true});
  EXPECT_EQ(x[1], Rational(1, 3));
  EXPECT_EQ(x[2], Rational(2, 3));
  EXPECT_EQ(x[0], 0);
  EXPECT_EQ(x[3], 1);
}

TEST(LinalgProperty, StationaryIsFixedPoint) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    SparseRows rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      // a cycle keeps the chain irreducible; one random extra edge per row
      const std::size_t j = rng() % n;
      Rational w(1 + static_cast<long>(rng() % 3), 4);
      w.canonicalize();
      rows[i].emplace_back((i + 1) % n, 1 - w);
      rows[i].emplace_back(j, w);
    }
    auto pi = stationary(rows);
    Rational sum = 0;
    std::vector<Rational> next(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum += pi[i];
      for (auto& [j, w] : rows[i]) next[j] += pi[i] * w;
    }
    EXPECT_EQ(sum, 1);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(next[i], pi[i]);
  }
}

TEST(Bounded, TrustGameValues) {
  Model m = trust_game();
  ModelPreferences prefs(m);
  SynthesizedStrategies zeta(m);
  BoundedChecker bc(m, prefs, zeta);
  auto v = bc.check_at(parse_path(m, "s0 s1 s3 s8"), *parse_formula("B{Bob}=? [ activeAlice ]"));
  EXPECT_EQ(v.value, Rational(6, 7));
  EXPECT_THROW(bc.check(*parse_formula("P>=1/2 [ F activeAlice ]")), FragmentError);
}

TEST(Bounded, MergesEqualHistories) {
  Model m = trust_game();
  ModelPreferences prefs(m);
  SynthesizedStrategies zeta(m);
  BoundedChecker bc(m, prefs, zeta);
  bc.ensure_level(5);
  std::set<std::pair<StateIdx, std::vector<int>>> keys;
  for (std::size_t i = 0; i < bc.size(); ++i) EXPECT_TRUE(keys.insert({bc.node(i).base, bc.node(i).history}).second);
  // rP of a merged node is the summed path probability of the paths embedded into it
  for (int a = 0; a < 2; ++a) {
    std::map<std::size_t, Rational> mass;
    for (auto& p : initialized_paths(m, 5)) mass[*bc.embed(p)] += path_probability(m, prefs, a, p);
    for (auto& [n, v] : mass) EXPECT_EQ(bc.reach_prob(a, n), v) << "node " << n;
  }
}

TEST(BoundedProperty, AgreesWithDirectEvaluator) {
  testkit::FormulaGen gen(57);
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    testkit::RandomModelSpec spec;
    spec.seed = 200 + seed;
    spec.full_observation = seed % 2 == 1;
    spec.ben_guards = seed % 3 == 0;
    Model m = testkit::random_model(spec);
    auto paths = initialized_paths(m, 3);
    for (int i = 0; i < 5; ++i) {
      FormulaPtr f = gen.state(2);
      if (classify_fragment(*f) != Fragment::BPRTL) continue;
      ModelPreferences prefs(m);
      SynthesizedStrategies z1(m), z2(m);
      BoundedChecker bc(m, prefs, z1);
      Evaluator ev(m, prefs, z2);
      for (auto& p : paths) {
        std::string a, b;
        try { a = bc.check_at(p, *f).str(); } catch (const Error& e) { a = e.kind(); }
        try { b = ev.eval(p, *f).str(); } catch (const Error& e) { b = e.kind(); }
        ASSERT_EQ(a, b) << to_string(*f) << " at " << to_string(m, p);
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(Pipeline, EngineSelection) {
  auto bprtl = parse_formula("B{Alice}>=1/2 [ X p ]");
  auto pq = parse_formula(kReach);
  auto general = parse_formula("P>=1/2 [ p U q ]");
  EXPECT_EQ(select_engine(*bprtl, Engine::Auto, false), Engine::Bounded);
  EXPECT_EQ(select_engine(*pq, Engine::Auto, false), Engine::Qualitative);
  EXPECT_THROW(select_engine(*general, Engine::Auto, false), FragmentError);
  EXPECT_EQ(select_engine(*general, Engine::Direct, false), Engine::Direct);
  EXPECT_EQ(parse_engine("bounded"), Engine::Bounded);
  EXPECT_THROW(parse_engine("fast"), Error);
}

TEST(Pipeline, TrustGameCheck) {
  Model m = trust_game();
  PipelineOptions opt;
  opt.at = parse_path(m, "s0 s2 s5 s12");
  PipelineResult r = run_pipeline(m, *parse_formula("DT{Alice,Bob}>=1/2 [ X (aBob=share) ]"), opt);
  EXPECT_TRUE(r.verdict.truth);
  EXPECT_EQ(r.engine, Engine::Bounded);
  EXPECT_EQ(r.horizon, 2 + 1 + 3);
  EXPECT_FALSE(r.strategies.empty());
  auto q = as_query(*parse_formula("DT{Alice,Bob}>=1/2 [ X (aBob=share) ]"));
  EXPECT_EQ(run_pipeline(m, *q, opt).verdict.value, Rational(1, 2));
  EXPECT_THROW(as_query(*parse_formula("p & q")), Error);
}

TEST(Qualitative, EquivalentShadowNeverResolves) {
  Model m = testkit::shadow_model({ShadowShape::Equivalent, 3, 1});
  UniformStrategies us(m);
  EXPECT_FALSE(check_qualitative(m, *parse_formula(kReach), us).verdict);
  EXPECT_TRUE(check_qualitative(m, *parse_formula("G (good => P<=0 [ F B{Obs}>=1 [ good ] ])"), us).verdict);
}

TEST(Qualitative, DivergentShadowResolves) {
  Model m = testkit::shadow_model({ShadowShape::Divergent, 3, 2});
  UniformStrategies us(m);
  auto r = check_qualitative(m, *parse_formula("G (good => P>=1 [ F B{Obs}>=1 [ good ] ])"), us);
  EXPECT_TRUE(r.verdict);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Qualitative, PreconditionEnforced) {
  Model m = testkit::shadow_model({ShadowShape::Mixed, 2, 1});
  UniformStrategies us(m);
  // a label that is not invariant along the chain
  std::vector<bool> psi(m.size(), false);
  psi[0] = true;
  std::pair<StateIdx, StateIdx> bad_edge;
  EXPECT_FALSE(check_precondition(m, psi, &bad_edge));
  EXPECT_EQ(bad_edge.first, 0u);
}

TEST(QualitativeProperty, ProductInvariants) {
  for (auto shape : {ShadowShape::Equivalent, ShadowShape::EquivalentProb, ShadowShape::Divergent, ShadowShape::Mixed})
    for (int k = 1; k <= 4; ++k) {
      Model m = testkit::shadow_model({shape, k, 1});
      std::vector<bool> bad(m.size());
      for (StateIdx s = 0; s < m.size(); ++s) bad[s] = !m.label(s, "good");
      ProductSystem prod = build_product(m, 0, bad);
      for (std::size_t i = 0; i < prod.states.size(); ++i) {
        auto [s1, s2] = prod.states[i];
        EXPECT_EQ(m.obs(0, s1), m.obs(0, s2));
        EXPECT_TRUE(bad[s2]);
        Rational w1 = 0, w2 = 0;
        for (auto& e : prod.edges[i]) {
          w1 += e.w1;
          w2 += e.w2;
        }
        EXPECT_LE(w1, 1);
        EXPECT_LE(w2, 1);
      }
      // SCCs partition the reachable product
      std::vector<bool> psi(m.size());
      for (StateIdx s = 0; s < m.size(); ++s) psi[s] = m.label(s, "good");
      std::vector<int> seen(prod.states.size(), 0);
      for (auto& c : classify_sccs(m, prod, psi))
        for (std::size_t x : c.members) ++seen[x];
      for (int v : seen) EXPECT_EQ(v, 1);
    }
}

// The verdict is monotone in q for >= and antitone for <=.
TEST(QualitativeProperty, MonotoneInThreshold) {
  for (int k = 1; k <= 4; ++k) {
    Model m = testkit::shadow_model({ShadowShape::Mixed, k, 1});
    UniformStrategies us(m);
    bool prev_ge = true, prev_le = false;
    for (const char* q : {"0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"}) {
      const std::string body = std::string(q) + " [ F B{Obs}>=1 [ good ] ])";
      const bool ge = check_qualitative(m, *parse_formula(std::string("G (good => P>=") + body), us).verdict;
      const bool le = check_qualitative(m, *parse_formula(std::string("G (good => P<=") + body), us).verdict;
      EXPECT_TRUE(prev_ge || !ge) << q;
      EXPECT_TRUE(!prev_le || le) << q;
      prev_ge = ge;
      prev_le = le;
    }
  }
}

TEST(TzengProperty, RenamingAndSplitting) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + rng() % 4;
    auto a = testkit::random_automaton(rng, n, 2);
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = (k + 1) % n;
    EXPECT_TRUE(tzeng_equivalent(a, testkit::renamed(a, perm)));
    auto split = testkit::split_state(a, rng() % n, Rational(1, 4));
    EXPECT_TRUE(tzeng_equivalent(a, split));
    EXPECT_TRUE(testkit::words_agree(a, split, 5));
  }
}

TEST(Simulate, DeterministicForSeed) {
  Model m = trust_game();
  SynthesizedStrategies z1(m), z2(m);
  std::mt19937_64 r1(42), r2(42);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(simulate_path(m, z1, r1, 6), simulate_path(m, z2, r2, 6));
}

TEST(Simulate, ScheduledMovesAreDistributions) {
  Model m = trust_game();
  SynthesizedStrategies zeta(m);
  for (auto& p : initialized_paths(m, 5)) {
    auto moves = scheduled_moves(m, zeta, p);
    Rational sum = 0;
    for (auto& mv : moves) sum += mv.prob;
    if (!moves.empty()) EXPECT_EQ(sum, 1) << path_id(m, p);
  }
}

// Sample frequencies stay within 3 sigma of the exact execution probability.
TEST(Simulate, MonteCarloMatchesExact) {
  Model m = trust_game();
  SynthesizedStrategies zeta(m);
  std::mt19937_64 rng(2024);
  const int runs = 4000;
  std::map<FinitePath, int> counts;
  for (int i = 0; i < runs; ++i) ++counts[simulate_path(m, zeta, rng, 5)];
  for (auto& [p, c] : counts) {
    const double exact = execution_probability(m, zeta, p).get_d();
    const double sigma = std::sqrt(exact * (1 - exact) / runs);
    EXPECT_NEAR(static_cast<double>(c) / runs, exact, 3 * sigma + 1e-9) << path_id(m, p);
  }
}
