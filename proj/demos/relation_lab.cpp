// Exact normal-generation probabilities for a few small Gamma-groups.

#include <iostream>

#include "rgm/lab.hpp"

using namespace rgm;

int main() {
  for (const auto& g : {cyclic_lab_group(7, 3, 2, "Z7 C3"), a5_trivial_c7()}) {
    const auto subs = enumerate_subgroups(g.gamma());
    for (int m = 1; m <= 2; ++m) {
      RelationLab lab(g, m);
      for (int n = 1; n <= 2; ++n) {
        NormalGenerationInstance inst{&g, m, n, SubgroupTuple({subs.front(), subs.back()})};
        const auto r = lab.evaluate(n, inst.gammas);
        std::cout << inst.label() << ": " << to_string(r.empirical) << (r.equal ? "  (matches formula)" : "  MISMATCH")
                  << "\n";
      }
    }
  }
}
