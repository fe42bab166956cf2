#pragma once

#include <vector>

#include "coleman/curve.hpp"
#include "coleman/dagger.hpp"
#include "coleman/matrix.hpp"

namespace coleman {

// Output of Kedlaya's algorithm on the odd de Rham basis w_i = x^i dx/2y:
// phi^*(w_i) = d f_i + sum_j M_ij w_j.
struct FrobeniusData {
  PadicMatrix M;
  std::vector<DaggerForm> exact_parts;  // f_0 .. f_{2g-1}, Function role
  long certified_prec = 0;              // digits to which M and f_i are correct
};

// y/phi(y) as a truncated element of A-dagger (Function role): the binomial
// expansion of (1 + Delta)^(-1/2) * y^(1-p) with Delta = (f(x^p) - f(x)^p)/y^(2p),
// keeping the first N binomial terms (term k is divisible by p^k).
DaggerForm frobenius_inverse_y(const HyperellipticCurve& curve);

struct ReducedForm {
  DaggerForm exact_part;      // Function role
  std::vector<Padic> coeffs;  // c_0 .. c_{2g-1}
  long certified_prec = 0;
};

// Writes an odd 1-form uniquely as df + sum_i c_i w_i, reducing x-degrees
// with y^2 = f(x) and telescoping y-exponents with the exactness relation.
ReducedForm reduce_form(const DaggerForm& omega, const HyperellipticCurve& curve);

FrobeniusData frobenius_action(const HyperellipticCurve& curve);

// det(lambda I - M) by exact division-free expansion.
PadicPoly char_poly(const PadicMatrix& M);

}  // namespace coleman
