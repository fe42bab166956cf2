#pragma once

#include <vector>

#include "coleman/padic.hpp"

namespace coleman {

class PadicSeries;

// Polynomial over Q_p with per-coefficient precision; trailing
// (indistinguishable-from-zero) exact coefficients are trimmed so the degree
// is canonical.
class PadicPoly {
 public:
  explicit PadicPoly(long p) : p_(p) {}
  PadicPoly(long p, std::vector<Padic> coeffs);

  static PadicPoly from_rationals(const std::vector<mpq_class>& coeffs, long p,
                                  long abs_prec);

  long prime() const { return p_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  // Coefficient of x^i (exact zero beyond the stored degree).
  Padic coeff(long i) const;
  const std::vector<Padic>& coeffs() const { return c_; }

  Padic eval(const Padic& x) const;
  PadicPoly derivative() const;

  PadicPoly operator+(const PadicPoly& rhs) const;
  PadicPoly operator-(const PadicPoly& rhs) const;
  PadicPoly operator*(const PadicPoly& rhs) const;
  PadicPoly scaled(const Padic& c) const;
  PadicPoly shifted(long k) const;  // multiply by x^k

  // Substitute a truncated series for x (Horner); output order = x.order().
  PadicSeries compose(const PadicSeries& x) const;

  // Reduction modulo p as int64 coefficients; requires integral coefficients.
  std::vector<long> mod_p() const;

 private:
  void trim();

  long p_;
  std::vector<Padic> c_;
};

// True iff gcd(f mod p, f' mod p) = 1 over F_p. The leading coefficient must
// be a unit.
bool mod_p_squarefree(const PadicPoly& f);

namespace fp {
// Dense F_p polynomial helpers (int64 coefficients in [0, p)).
std::vector<long> trim(std::vector<long> a);
std::vector<long> derivative(const std::vector<long>& a, long p);
std::vector<long> rem(std::vector<long> a, const std::vector<long>& b, long p);
std::vector<long> gcd(std::vector<long> a, std::vector<long> b, long p);
long eval(const std::vector<long>& a, long x, long p);
}  // namespace fp

}  // namespace coleman
