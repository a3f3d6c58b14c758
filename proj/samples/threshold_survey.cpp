// Critical benefit-to-cost ratios of a few graphs under every built-in landscape.
#include <cstdio>

#include "selfloop/generators.hpp"
#include "selfloop/landscape.hpp"
#include "selfloop/threshold.hpp"

using namespace selfloop;

int main() {
  const struct {
    const char* name;
    Graph g;
  } graphs[] = {
      {"hex lattice 6x12", lattice_graph(LatticeKind::Hex3, 6, 12)},
      {"square lattice 10x10", lattice_graph(LatticeKind::Square4, 10, 10)},
      {"BA(100,3)", barabasi_albert_graph(100, 3, 1)},
      {"WS(100,6,0.1)", watts_strogatz_graph(100, 6, 0.1, 1)},
      {"star(25)", star_graph(25)},
  };
  const LandscapeSpec landscapes[] = {LandscapeSpec::zero(), LandscapeSpec::exp_neg_k(), LandscapeSpec::ln_k(),
                                      LandscapeSpec::one_minus_inv_k(), LandscapeSpec::inv_k_plus_one()};

  std::printf("%-22s", "graph");
  for (const auto& l : landscapes) std::printf("%18s", to_string(l).c_str());
  std::printf("\n");
  for (const auto& [name, g] : graphs) {
    std::printf("%-22s", name);
    for (const auto& l : landscapes) {
      const auto r = critical_ratio(apply_landscape(g, l));
      std::printf("%18.6g", r.bc_star);
    }
    std::printf("\n");
  }
}
