// Walk through the invariants of the golden mean shift and its vertex
// splitting, and move elements across the shift equivalence between them.

#include "sftdim/sftdim.hpp"

#include <iostream>

using namespace sftdim;

int main() {
  const IntMatrix a{{1, 1}, {1, 0}};
  const IntMatrix b{{1, 1, 0}, {0, 0, 1}, {1, 1, 0}};
  auto amb_a = Ambient::make(a);
  auto amb_b = Ambient::make(b);

  std::cout << "lambda       " << amb_a->perron().lambda << "\n";
  std::cout << "m_A          " << amb_a->minpoly().minimal.to_string() << "\n";
  std::cout << "rank C(A)    " << amb_a->centralizer().rank() << "\n";

  // [A,0] and [A,1] are inverse in K0 of the mapping cylinder.
  const auto unit = mul_00(k0_generator(amb_a), k0_generator_inverse(amb_a));
  std::cout << "[A,0][A,1]   " << (k0_equal(unit, k0_identity(amb_a)) ? "= [I,0]" : "!= [I,0]") << "\n";

  // alpha acts on K0(S) as right multiplication by [A,0].
  const StableElement s(amb_a, IntMatrix{{2, -1}}, 1);
  std::cout << "tau_s(s)     " << trace_s(s) << "\n";
  std::cout << "tau_s(as)    " << trace_s(alpha(s)) << "\n";
  std::cout << "positive     " << to_string(is_positive(s).verdict) << "\n";

  const ShiftEquivalenceWitness w{IntMatrix{{1, 1, 0}, {0, 0, 1}}, IntMatrix{{1, 0}, {0, 1}, {1, 0}}, 1};
  std::cout << "witness      " << (verify(a, b, w).valid() ? "valid" : "invalid") << "\n";
  const InducedMaps maps(amb_a, amb_b, w);
  const auto image = maps.phi_s(s);
  std::cout << "phi_S(s)     " << image.payload() << " at level " << image.level() << "\n";
  std::cout << "positive     " << to_string(is_positive(image).verdict) << "\n";
  std::cout << "round trip   " << (equal(maps.phi_s_inv(image), s) ? "ok" : "broken") << "\n";
}
