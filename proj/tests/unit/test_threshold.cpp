#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "random_graphs.hpp"
#include "selfloop/closed_forms.hpp"
#include "selfloop/generators.hpp"
#include "selfloop/landscape.hpp"
#include "selfloop/threshold.hpp"

using namespace selfloop;

TEST(CriticalRatio, TriangleIsSpite) {
  auto r = critical_ratio(complete_graph(3));
  EXPECT_NEAR(r.bc_star, -2.0, 1e-13);
  EXPECT_EQ(r.regime, Regime::Spite);
  ASSERT_TRUE(r.sigma.has_value());
  EXPECT_NEAR(*r.sigma, 1.0 / 3.0, 1e-13);
  EXPECT_NEAR(r.numerator, 1.0, 1e-14);
  EXPECT_NEAR(r.denominator, -0.5, 1e-14);
}

TEST(CriticalRatio, NeutralCases) {
  for (const Graph& g : {star_graph(3), star_graph(8), cycle_graph(4)}) {
    auto r = critical_ratio(g);
    EXPECT_EQ(r.regime, Regime::NeutralInfinite);
    EXPECT_TRUE(std::isinf(r.bc_star));
    EXPECT_FALSE(r.sigma.has_value());
  }
}

TEST(CriticalRatio, RegularGraphsMatchClosedForm) {
  struct Case {
    Graph g;
    int k;
  };
  const Case cases[] = {{cycle_graph(7), 2},
                        {petersen_graph(), 3},
                        {complete_graph(6), 5},
                        {lattice_graph(LatticeKind::Square4, 4, 4), 4},
                        {lattice_graph(LatticeKind::Hex3, 4, 6), 3},
                        {lattice_graph(LatticeKind::Tri6, 4, 5), 6},
                        {random_regular_graph(30, 7, 3), 7}};
  for (const auto& c : cases)
    for (double l : {0.0, 0.3, 1.0, std::log(double(c.k)), 4.0}) {
      auto eng = critical_ratio(apply_landscape(c.g, LandscapeSpec::constant(l)));
      auto cf = bc_regular(c.g.size(), c.k, l);
      ASSERT_EQ(eng.regime, cf.regime) << c.g.size() << " " << l;
      if (eng.regime != Regime::NeutralInfinite) {
        EXPECT_NEAR(eng.bc_star, cf.bc_star, 1e-9 * std::abs(cf.bc_star));
      }
    }
}

TEST(CriticalRatio, RequiresThreeVertices) {
  try {
    critical_ratio(build_graph(2, {{0, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooSmall);
  }
  try {
    critical_ratio(build_graph(4, {{0, 1}, {2, 3}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Disconnected);
  }
}

TEST(ClassifyRegime, SignRule) {
  EXPECT_EQ(classify_regime(1.0, 0.5), Regime::Cooperation);
  EXPECT_EQ(classify_regime(1.0, -0.5), Regime::Spite);
  EXPECT_EQ(classify_regime(2.0 / 3.0, 0.0), Regime::NeutralInfinite);
  EXPECT_EQ(classify_regime(1.0, 1e-13), Regime::NeutralInfinite);
  EXPECT_EQ(classify_regime(1e6, 1e-7), Regime::NeutralInfinite);
  EXPECT_EQ(classify_regime(1e6, 1e-5), Regime::Cooperation);
}

TEST(StructureCoefficient, Values) {
  EXPECT_DOUBLE_EQ(structure_coefficient(3.0), 2.0);
  EXPECT_DOUBLE_EQ(structure_coefficient(-2.0), 1.0 / 3.0);
  for (double x : {1.5, 2.0, 10.0, -2.0})
    EXPECT_NEAR(structure_coefficient(structure_coefficient(x)), x, 1e-12 * std::abs(x));
  for (double bad : {1.0, double(INFINITY), -double(INFINITY), double(NAN)}) {
    try {
      structure_coefficient(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::UndefinedSigma);
    }
  }
}

TEST(CriticalRatio, MagnitudeExceedsOneOnRandomGraphs) {
  std::mt19937_64 rng(17);
  int finite = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 16)(rng);
    auto inst = testgen::random_connected(rng, n, 0.25, 3.0, trial % 2 == 0);
    auto r = critical_ratio(inst.graph);
    if (r.regime == Regime::NeutralInfinite) continue;
    ++finite;
    EXPECT_GT(std::abs(r.bc_star), 1.0);
    EXPECT_GT(r.numerator, 0.0);
    EXPECT_EQ(*r.sigma > 1.0, r.regime == Regime::Cooperation);
  }
  EXPECT_GT(finite, 450);
}

TEST(CriticalRatio, ScaleInvariant) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = testgen::random_connected(rng, 12, 0.3, 2.0, true);
    std::vector<Edge> scaled;
    for (auto e : inst.graph.edges()) scaled.push_back({e.u, e.v, e.weight * 0.125});
    auto loops = inst.loops;
    for (auto& v : loops) v *= 0.125;
    auto a = critical_ratio(inst.graph);
    auto b = critical_ratio(Graph::from_edges(12, scaled).with_self_loops(loops));
    EXPECT_EQ(a.regime, b.regime);
    EXPECT_NEAR(a.bc_star, b.bc_star, 1e-10 * std::abs(a.bc_star));
  }
}
