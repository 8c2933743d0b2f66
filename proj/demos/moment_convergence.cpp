// Finite-n moments and trivial-class probabilities approaching their limits
// for Z/3 with the sign action of C2.

#include <iomanip>
#include <iostream>

#include "rgm/theory.hpp"

using namespace rgm;

int main() {
  auto G = make_group(FiniteGroupTable::builtin("C2"));
  auto rd = make_representation_data(G, 3);
  const Fingerprint sign = Fingerprint::parse("S1:1", rd->size(), 1);
  const Fingerprint zero(rd->size(), 1);
  for (const char* which : {"trivial", "full"}) {
    const Subgroup s = std::string(which) == "full" ? full_subgroup(G) : trivial_subgroup(G);
    TheoryContext ctx(rd, 1, SubgroupTuple({s}));
    std::cout << "Gamma_1 = " << which << "\n";
    std::cout << "   n  E|Sur(X,sign)|        P(X=0)\n";
    for (int n = 1; n <= 10; ++n)
      std::cout << std::setw(4) << n << "  " << std::setw(18) << std::left << to_string(finite_n_moment(ctx, n, sign))
                << std::right << "  " << std::setprecision(10) << finite_n_probability(ctx, n, zero).value_float << "\n";
    std::cout << "   limit moment " << to_string(theoretical_moment(ctx, sign)) << ", P(X=0) -> "
              << limit_probability(ctx, zero).value_float << "\n\n";
  }
}
