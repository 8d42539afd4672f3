#pragma once

#include <random>
#include <vector>

#include "knotsw/diagram.hpp"

namespace knotsw::testutil {

// Random connected diagram as a braid closure; every generator index
// appears so the closure's crossing graph is connected.
inline LinkDiagram random_diagram(std::mt19937& rng, int max_crossings = 10) {
  std::uniform_int_distribution<int> nstr(2, 3);
  for (;;) {
    int n = nstr(rng);
    std::uniform_int_distribution<int> len(n, max_crossings);
    int L = len(rng);
    std::uniform_int_distribution<int> gen(1, n - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<int> word;
    std::vector<bool> used(n, false);
    for (int i = 0; i < L; ++i) {
      int g = gen(rng);
      used[g] = true;
      word.push_back(coin(rng) ? g : -g);
    }
    bool all = true;
    for (int g = 1; g < n; ++g) all = all && used[g];
    if (!all) continue;
    return braid_closure(n, word);
  }
}

inline LinkDiagram random_knot(std::mt19937& rng, int max_crossings = 10) {
  for (;;) {
    LinkDiagram d = random_diagram(rng, max_crossings);
    if (d.n_components() == 1) return d;
  }
}

}  // namespace knotsw::testutil
