// Dense regular graph N=50, k=30: the threshold as the uniform loop grows,
// from the closed form and from the coalescence engine on a random 30-regular graph.
#include <cstdio>

#include "selfloop/closed_forms.hpp"
#include "selfloop/generators.hpp"
#include "selfloop/landscape.hpp"

using namespace selfloop;

int main() {
  const int N = 50, k = 30;
  const Graph g = random_regular_graph(N, k, 7);
  std::printf("spite/cooperation flip at l = %.9f\n\n", regular_spite_transition(N, k));
  std::printf("%8s %16s %16s  %s\n", "l", "closed form", "engine", "regime");
  for (double l = 0.0; l <= 1.0 + 1e-12; l += 0.05) {
    const auto cf = bc_regular(N, k, l);
    const auto eng = critical_ratio(apply_landscape(g, LandscapeSpec::constant(l)));
    std::printf("%8.2f %16.6f %16.6f  %s\n", l, cf.bc_star, eng.bc_star, std::string(regime_name(cf.regime)).c_str());
  }
}
