// Prints exact generalized twisted Euler numbers for a small twisted
// setting: chi the quadratic character mod 3 and xi = zeta_3, so values
// live in Q(zeta_6).

#include <iostream>

#include <etwist/etwist.hpp>

using namespace etwist;

int main() {
  auto chi = enumerate_characters(3)[1];
  EulerContext ctx(3, 1, 3, chi, 1);

  std::cout << "field: Q(zeta_" << ctx.field()->modulus << "), degree "
            << ctx.field()->degree << "\n";

  auto E = euler_numbers(ctx, 8);
  for (unsigned n = 0; n <= 8; ++n)
    std::cout << "E_" << n << " = " << field_element_brief((*E)[n]) << "\n";

  // values of E_3 at a few rational points
  for (int k = 0; k <= 3; ++k) {
    Rat half_k(k, 2);
    half_k.canonicalize();
    FieldElement x(ctx.field(), half_k);
    std::cout << "E_3(" << k << "/2) = "
              << field_element_brief(euler_polynomial(ctx, 3, x)) << "\n";
  }
  return 0;
}
