// Weighted Cheeger constant of a small complex versus its spectral lower bound.

#include <cstdio>

#include "scx/scx.hpp"

int main() {
  // two tetrahedra boundaries glued along an edge
  const auto k = scx::build_complex({{{0, 1, 2}}, {{0, 1, 3}}, {{0, 2, 3}}, {{1, 2, 3}},
                                     {{0, 1, 4}}, {{0, 4, 5}}, {{1, 4, 5}}, {{0, 1, 5}}});
  for (int order = 1; order <= 2; ++order) {
    const auto h = scx::weighted_cheeger_constant(k, order);
    std::printf("k = %d: h = %.6f, bound = %.6f, blocks:", order, h.value, scx::cheeger_lower_bound(k, order));
    for (const auto& block : h.partition.blocks) {
      std::printf(" {");
      for (std::size_t a = 0; a < block.size(); ++a) std::printf(a ? " %lld" : "%lld", static_cast<long long>(block[a]));
      std::printf("}");
    }
    std::printf("\n");
  }
  return 0;
}
