#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "random_graphs.hpp"
#include "selfloop/generators.hpp"
#include "selfloop/landscape.hpp"
#include "selfloop/walk.hpp"

using namespace selfloop;

namespace {

Graph star_with(int N, double alpha, double beta) {
  std::vector<double> loops(static_cast<std::size_t>(N), alpha);
  loops[0] = beta;
  return star_graph(N).with_self_loops(loops);
}

}  // namespace

TEST(Transition, StarLeafWithLoop) {
  const double a = 0.7;
  auto p = transition_matrix(star_with(6, a, 2.0));
  EXPECT_DOUBLE_EQ(p(3, 3), a / (1 + a));
  EXPECT_DOUBLE_EQ(p(3, 0), 1 / (1 + a));
  EXPECT_DOUBLE_EQ(p(3, 4), 0.0);
}

TEST(Transition, PathAndTriangle) {
  auto p = transition_matrix(build_graph(2, {{0, 1}}));
  EXPECT_EQ(p(0, 1), 1.0);
  EXPECT_EQ(p(1, 0), 1.0);

  auto q = transition_matrix(apply_landscape(complete_graph(3), LandscapeSpec::constant(1.0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(q(i, j), 1.0 / 3.0);
}

TEST(Transition, IsolatedVertex) {
  Graph g = build_graph(3, {{0, 1}});
  EXPECT_THROW(transition_matrix(g), Error);
  try {
    transition_matrix(g);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IsolatedVertex);
  }
}

TEST(Stationary, StarFormula) {
  for (int N : {3, 5, 10})
    for (double a : {0.0, 0.5, 2.0})
      for (double b : {0.0, 1.0, 3.0}) {
        auto pi = stationary_distribution(star_with(N, a, b));
        EXPECT_NEAR(pi[0], (N - 1 + b) / (2 * N + N * a - 2 - a + b), 1e-14);
      }
}

TEST(Stationary, HubHubFormula) {
  for (int N : {3, 6})
    for (double a : {0.0, 0.4})
      for (double g : {0.0, 2.5}) {
        std::vector<double> loops(static_cast<std::size_t>(2 * N), a);
        loops[0] = loops[static_cast<std::size_t>(N)] = g;
        auto pi = stationary_distribution(hubhub_graph(N).with_self_loops(loops));
        const double expect = (N + g) / (4 * N + 2 * g + 2 * N * a - 2 * a - 2);
        EXPECT_NEAR(pi[0], expect, 1e-14);
        EXPECT_NEAR(pi[static_cast<std::size_t>(N)], expect, 1e-14);
      }
}

TEST(Stationary, RegularIsUniform) {
  Graph g = apply_landscape(petersen_graph(), LandscapeSpec::constant(0.8));
  for (double v : stationary_distribution(g)) EXPECT_NEAR(v, 0.1, 1e-15);
}

TEST(NStep, Examples) {
  const double a = 0.6, b = 1.3;
  Graph s = star_with(5, a, b);
  auto p = transition_matrix(s);
  auto p2 = n_step_return(p, 2);
  EXPECT_NEAR(p2[2], p(2, 2) * p(2, 2) + p(2, 0) * p(0, 2), 1e-15);

  for (double l : {0.0, 0.5, 2.0}) {
    const double k = 4;
    auto r = n_step_return(apply_landscape(lattice_graph(LatticeKind::Square4, 4, 4), LandscapeSpec::constant(l)), 2);
    for (double v : r) EXPECT_NEAR(v, (l * l + k) / ((k + l) * (k + l)), 1e-15);
  }

  EXPECT_DOUBLE_EQ(n_step_return(star_graph(3), 2)[0], 1.0);
}

TEST(NStep, UnsupportedStep) {
  for (int s : {0, 1, 4}) {
    try {
      n_step_return(star_graph(4), s);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::UnsupportedStep);
    }
  }
}

TEST(WalkProperties, RandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 50)(rng);
    auto inst = testgen::random_connected(rng, n, 0.15, 3.0, trial % 2 == 0);
    WalkCache w(inst.graph);
    const auto m = oracle::walk(inst.w, inst.loops);
    const auto dense2 = oracle::multiply(m.p, m.p);
    const auto dense3 = oracle::multiply(dense2, m.p);
    for (int i = 0; i < n; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        row += w.p1(i, j);
        EXPECT_NEAR(w.pi[ii] * w.p1(i, j), w.pi[jj] * w.p1(j, i), 1e-12);
        EXPECT_NEAR(w.p1(i, j), m.p[ii][jj], 1e-15);
      }
      EXPECT_NEAR(row, 1.0, 1e-12);
      double flow = 0.0;
      for (int j = 0; j < n; ++j) flow += w.pi[static_cast<std::size_t>(j)] * w.p1(j, i);
      EXPECT_NEAR(flow, w.pi[ii], 1e-12);
      EXPECT_NEAR(w.p2_diag[ii], dense2[ii][ii], 1e-14);
      EXPECT_NEAR(w.p3_diag[ii], dense3[ii][ii], 1e-14);
    }
  }
}

TEST(WalkProperties, AddingLoopMassShiftsProbability) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = testgen::random_connected(rng, 12, 0.3, 2.0, true);
    auto more = inst.loops;
    for (auto& v : more) v += 0.5;
    auto p = transition_matrix(inst.graph);
    auto q = transition_matrix(inst.graph.with_self_loops(more));
    for (int i = 0; i < 12; ++i) {
      EXPECT_GT(q.self(i), p.self(i));
      for (const auto& e : p.row(i)) EXPECT_LT(q(i, e.vertex), e.weight);
    }
  }
}
