#pragma once

#include <map>

#include "coleman/curve.hpp"
#include "coleman/poly.hpp"

namespace coleman {

// Truncated element of the weak completion A-dagger: a finite sum
// sum_j B_j(x) * y^(-j). Two roles share the representation:
//   Function   — the element itself,
//   OddOneForm — the 1-form (sum_j B_j(x) y^(-j)) * dx/(2y).
// Odd 1-forms have even y-exponents only; odd functions have odd exponents.
class DaggerForm {
 public:
  enum class Role { Function, OddOneForm };

  DaggerForm(long p, Role role) : p_(p), role_(role) {}

  static DaggerForm function(long p) { return DaggerForm(p, Role::Function); }
  static DaggerForm odd_one_form(long p) {
    return DaggerForm(p, Role::OddOneForm);
  }

  long prime() const { return p_; }
  Role role() const { return role_; }
  const std::map<long, PadicPoly>& terms() const { return terms_; }
  bool is_zero() const;

  // Adds B(x) * y^(-j) to the element.
  void add_term(long j, const PadicPoly& B);

  DaggerForm operator+(const DaggerForm& rhs) const;
  DaggerForm operator-(const DaggerForm& rhs) const;
  DaggerForm scaled(const Padic& c) const;

  // Largest y-exponent j with a nonzero B_j (0 for the zero element).
  long max_y_exponent() const;
  long min_y_exponent() const;

  // True if every stored exponent has the stated parity.
  bool all_exponents_even() const;
  bool all_exponents_odd() const;

 private:
  long p_;
  Role role_;
  std::map<long, PadicPoly> terms_;
};

// Exterior derivative of a function h in A-dagger, as an odd 1-form:
// d(B(x) y^(-j)) = (2 f B' - j B f') y^(-(j+1)) * dx/(2y).
DaggerForm dagger_differential(const DaggerForm& h, const HyperellipticCurve& curve);

// sum_j B_j(x(P)) y(P)^(-j); P must be affine with x integral, and y(P) must
// be a unit whenever a positive exponent occurs (the series does not converge
// in Weierstrass discs).
Padic evaluate_dagger(const DaggerForm& h, const CurvePoint& P);

}  // namespace coleman
