// Benchmark: serial reference vs OpenMP task-parallel skein evaluation on
// growing twist knots and random braid closures. The parallel engine must
// reproduce the serial polynomials bitwise; this target reports timings.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "knotsw/diagram.hpp"
#include "knotsw/skein.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace knotsw;

namespace {

double run_once(SkeinEngine& eng, const LinkDiagram& d, bool parallel,
                LaurentPoly* out) {
  eng.clear_cache();
  auto t0 = std::chrono::steady_clock::now();
  SkeinResult r = parallel ? eng.alexander(d) : eng.alexander_serial(d);
  double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  *out = r.poly;
  return dt;
}

LinkDiagram random_braid(std::mt19937& rng, int strands, int length) {
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    std::vector<int> word;
    std::vector<bool> used(strands, false);
    for (int i = 0; i < length; ++i) {
      int g = gen(rng);
      used[g] = true;
      word.push_back(coin(rng) ? g : -g);
    }
    bool all = true;
    for (int g = 1; g < strands; ++g) all = all && used[g];
    if (all) return braid_closure(strands, word);
  }
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 2;
#ifdef _OPENMP
  jobs = omp_get_max_threads();
#endif
  if (argc > 1) jobs = std::atoi(argv[1]);
  std::printf("skein benchmark: serial reference vs %d-way tasks\n", jobs);
  std::printf("%-28s %10s %10s %8s %7s\n", "diagram", "serial[s]",
              "parallel[s]", "speedup", "match");

  SkeinEngine serial(1), par(jobs);
  std::vector<std::pair<std::string, LinkDiagram>> cases;
  for (int k : {6, 8, 10})
    cases.push_back({"twist(" + std::to_string(k) + ")", twist_family(k)});
  std::mt19937 rng(7);
  for (int len : {12, 14, 15})
    cases.push_back({"random braid len " + std::to_string(len),
                     random_braid(rng, 3, len)});

  for (auto& [name, d] : cases) {
    LaurentPoly a, b;
    double ts = run_once(serial, d, false, &a);
    double tp = run_once(par, d, true, &b);
    std::printf("%-28s %10.4f %10.4f %8.2fx %7s\n", name.c_str(), ts, tp,
                ts / (tp > 0 ? tp : 1e-9), a == b ? "yes" : "NO");
    if (!(a == b)) return 1;
  }
  return 0;
}
