#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracle.hpp"
#include "random_graphs.hpp"
#include "selfloop/coalescence.hpp"
#include "selfloop/generators.hpp"

using namespace selfloop;

namespace {

Graph star_with(int N, double alpha, double beta) {
  std::vector<double> loops(static_cast<std::size_t>(N), alpha);
  loops[0] = beta;
  return star_graph(N).with_self_loops(loops);
}

double pi2_eta(const CoalescenceResult& c, const WalkCache& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.pi.size(); ++i) acc += w.pi[i] * w.pi[i] * c.eta_i[i];
  return acc;
}

}  // namespace

TEST(PairIndex, IsBijective) {
  for (int n : {2, 3, 7, 20}) {
    std::set<std::size_t> seen;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const auto t = pair_index(n, i, j);
        EXPECT_EQ(t, pair_index(n, j, i));
        EXPECT_LT(t, static_cast<std::size_t>(n * (n - 1) / 2));
        seen.insert(t);
      }
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST(Coalescence, TwoPath) {
  Graph g = build_graph(2, {{0, 1}});
  WalkCache w(g);
  auto c = coalescence(w);
  EXPECT_DOUBLE_EQ(c.eta(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(c.eta(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(c.eta_i[0], 2.0);
  EXPECT_DOUBLE_EQ(c.eta_i[1], 2.0);
  EXPECT_DOUBLE_EQ(pi2_eta(c, w), 1.0);
}

TEST(Coalescence, Triangle) {
  WalkCache w(complete_graph(3));
  auto c = coalescence(w);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(c.eta(i, j), i == j ? 0.0 : 2.0, 1e-14);
  for (double v : c.eta_i) EXPECT_NEAR(v, 3.0, 1e-14);
  EXPECT_NEAR(pi2_eta(c, w), 1.0, 1e-14);
  EXPECT_NEAR(c.eta1, 2.0, 1e-14);
  EXPECT_NEAR(c.eta2, 1.0, 1e-14);
  EXPECT_NEAR(c.eta3_minus_eta1, -0.5, 1e-14);
}

TEST(Coalescence, StarHubLeafFormula) {
  for (int N : {3, 4, 7, 12})
    for (double a : {0.0, 0.3, 1.5})
      for (double b : {0.0, 0.8, 4.0}) {
        WalkCache w(star_with(N, a, b));
        auto c = coalescence(w);
        const double hl = (1 + a) * (N * a - 2 * a + 2 * b + 3 * N - 4) / (N + a + b);
        EXPECT_NEAR(c.eta(0, 1), hl, 1e-11 * hl) << N << " " << a << " " << b;
        EXPECT_NEAR(c.eta_i[0], 1 + (N - 1) * w.p1(0, 1) * hl, 1e-10 * hl);
        EXPECT_NEAR(c.eta_i[1], 1 + w.p1(1, 0) * hl, 1e-10 * hl);
      }
}

TEST(Coalescence, LoopFreeStarN3) {
  WalkCache w(star_graph(3));
  auto c = coalescence(w);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += w.pi[static_cast<std::size_t>(i)] * c.eta_i[static_cast<std::size_t>(i)];
  EXPECT_NEAR(s, 8.0 / 3.0, 1e-14);
  EXPECT_NEAR(c.eta2, 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(c.eta3_minus_eta1, 0.0, 1e-14);
}

TEST(Coalescence, EtaZeroIsZero) {
  // eta^(0) = sum_i pi_i eta_ii
  auto c = coalescence(petersen_graph());
  for (int i = 0; i < 10; ++i) EXPECT_EQ(c.eta(i, i), 0.0);
}

TEST(Coalescence, MatchesDenseOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 9)(rng);
    auto inst = testgen::random_connected(rng, n, 0.3, 2.0, trial % 3 == 0);
    const auto m = oracle::walk(inst.w, inst.loops);
    const auto ref = oracle::coalescence(m);
    const auto refs = oracle::series(m, ref);
    WalkCache w(inst.graph);
    auto c = coalescence(w);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double r = ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        EXPECT_NEAR(c.eta(i, j), r, 1e-10 * std::max(1.0, r));
      }
    EXPECT_NEAR(c.eta1, refs.eta1, 1e-10 * std::abs(refs.eta1));
    EXPECT_NEAR(c.eta2, refs.eta2, 1e-10 * std::abs(refs.eta2));
    EXPECT_NEAR(c.eta3, refs.eta3, 1e-10 * std::abs(refs.eta3));
  }
}

TEST(Coalescence, SolversAgreeAndInvariantsHold) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 40)(rng);
    auto inst = testgen::random_connected(rng, n, 0.1, 3.0, trial % 2 == 1);
    WalkCache w(inst.graph);
    SolverOptions dense{SolverKind::DenseCholesky}, cg{SolverKind::ConjugateGradient}, fp{SolverKind::FixedPoint};
    auto a = solve_pairwise_eta(w, dense);
    auto b = solve_pairwise_eta(w, cg);
    auto f = solve_pairwise_eta(w, fp);
    for (std::size_t t = 0; t < a.pair_count(); ++t) {
      EXPECT_NEAR(a.at_pair(t), b.at_pair(t), 1e-9 * std::max(1.0, a.at_pair(t)));
      EXPECT_NEAR(a.at_pair(t), f.at_pair(t), 1e-9 * std::max(1.0, a.at_pair(t)));
      EXPECT_GE(a.at_pair(t), 1.0);
    }
    EXPECT_LT(max_recurrence_residual(a, w.p1), 1e-9);
    auto c = coalescence(w);
    EXPECT_NEAR(pi2_eta(c, w), 1.0, 1e-9);
  }
}

TEST(Coalescence, ScaleInvariance) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = testgen::random_connected(rng, 15, 0.2, 2.0, true);
    std::vector<Edge> scaled;
    for (auto e : inst.graph.edges()) scaled.push_back({e.u, e.v, e.weight * 3.7});
    auto loops = inst.loops;
    for (auto& v : loops) v *= 3.7;
    Graph big = Graph::from_edges(15, scaled).with_self_loops(loops);
    auto c1 = coalescence(inst.graph);
    auto c2 = coalescence(big);
    for (std::size_t t = 0; t < c1.eta.pair_count(); ++t)
      EXPECT_NEAR(c1.eta.at_pair(t), c2.eta.at_pair(t), 1e-10 * c1.eta.at_pair(t));
    EXPECT_NEAR(c1.eta2, c2.eta2, 1e-10 * std::abs(c1.eta2));
  }
}

TEST(Coalescence, DefinitionalSeriesMatchesRecurrence) {
  for (const Graph& g : {petersen_graph(), hubhub_graph(6), ceiling_fan_graph(9), barabasi_albert_graph(60, 2, 1)}) {
    WalkCache w(g);
    auto eta = solve_pairwise_eta(w);
    auto ei = remeeting_times(eta, w);
    auto r = eta_series(eta, ei, w);
    auto d = definitional_eta_series(eta, w);
    EXPECT_NEAR(r.eta1, d.eta1, 1e-8 * std::abs(d.eta1));
    EXPECT_NEAR(r.eta2, d.eta2, 1e-8 * std::abs(d.eta2));
    EXPECT_NEAR(r.eta3, d.eta3, 1e-8 * std::abs(d.eta3));
  }
}

TEST(Coalescence, CrossCheckDetectsInconsistency) {
  WalkCache w(cycle_graph(6));
  auto eta = solve_pairwise_eta(w);
  auto ei = remeeting_times(eta, w);
  ei[0] += 0.5;
  try {
    eta_series(eta, ei, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CrossCheckFailed);
  }
}

TEST(Coalescence, IterationLimitReported) {
  SolverOptions opts{SolverKind::FixedPoint};
  opts.max_iterations = 3;
  try {
    solve_pairwise_eta(WalkCache(cycle_graph(12)), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SolverDidNotConverge);
    EXPECT_TRUE(is_numerical(e.code()));
  }
}

TEST(Coalescence, LargerGraphUsesIterativeSolver) {
  Graph g = watts_strogatz_graph(120, 6, 0.1, 4);
  WalkCache w(g);
  auto c = coalescence(w);
  EXPECT_LT(max_recurrence_residual(c.eta, w.p1), 1e-9);
  EXPECT_NEAR(pi2_eta(c, w), 1.0, 1e-9);
}
