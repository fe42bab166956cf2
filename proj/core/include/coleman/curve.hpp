#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coleman/padic.hpp"
#include "coleman/poly.hpp"

namespace coleman {

class CurvePoint {
 public:
  static CurvePoint infinity(long p);
  static CurvePoint affine(Padic x, Padic y);

  long prime() const { return p_; }
  bool is_infinity() const { return infinite_; }
  const Padic& x() const;
  const Padic& y() const;

  std::string str() const;

 private:
  long p_ = 0;
  bool infinite_ = false;
  Padic x_, y_;
};

struct DiscDescriptor {
  long x_residue = 0;
  long y_residue = 0;
  bool weierstrass = false;
  bool infinite = false;

  bool same_disc(const DiscDescriptor& o) const {
    return x_residue == o.x_residue && y_residue == o.y_residue &&
           weierstrass == o.weierstrass && infinite == o.infinite;
  }
};

// Validated odd-degree hyperelliptic model y^2 = f(x) over Q_p: p > 2 prime,
// f monic of degree 2g+1 with p-integral coefficients and no repeated roots
// modulo p. Carries the working precision N (requested digits plus guard
// digits covering the known precision losses).
class HyperellipticCurve {
 public:
  static HyperellipticCurve create(const std::vector<mpq_class>& f_low_to_high,
                                   long p, long target_digits);
  // Same curve with a different working precision (used for audit re-runs
  // and guard-digit stability checks).
  HyperellipticCurve with_working_prec(long n) const;

  long prime() const { return p_; }
  long genus() const { return genus_; }
  long target_digits() const { return target_digits_; }
  long working_prec() const { return working_prec_; }
  const PadicPoly& f() const { return f_; }
  const PadicPoly& f_derivative() const { return fprime_; }
  const std::vector<mpq_class>& f_rationals() const { return f_rat_; }

  Padic f_at(const Padic& x) const { return f_.eval(x); }

  // Constructs the point (x0, y) with y = sqrt(f(x0)) chosen by the residue
  // of y modulo p (for a unit y). f(x0) of odd positive valuation is
  // rejected; f(x0) = 0 to precision yields the Weierstrass point (x0, 0).
  CurvePoint lift_point(const mpq_class& x0, long sign_residue) const;
  CurvePoint lift_point(const Padic& x0, long sign_residue) const;

  bool on_curve(const CurvePoint& P) const;
  void require_on_curve(const CurvePoint& P) const;

  DiscDescriptor classify_disc(const CurvePoint& P) const;
  CurvePoint involution(const CurvePoint& P) const;

  // phi(P) = (x^p, sqrt(f(x^p)) with the residue of y); P must be affine
  // non-Weierstrass.
  CurvePoint frobenius_point(const CurvePoint& P) const;
  // The unique Frobenius-fixed point in P's residue disc.
  CurvePoint teichmuller_point(const CurvePoint& P) const;
  // Hensel-lifted root of f in the (finite Weierstrass) disc of P.
  CurvePoint nearest_weierstrass_point(const CurvePoint& P) const;

 private:
  HyperellipticCurve() : f_(0), fprime_(0) {}

  long p_ = 0;
  long genus_ = 0;
  long target_digits_ = 0;
  long working_prec_ = 0;
  PadicPoly f_;
  PadicPoly fprime_;
  std::vector<mpq_class> f_rat_;
};

// N = target + (1 + floor(log_p(max(N, 2g+1)))) + g + 2, solved by iteration.
long choose_working_prec(long p, long genus, long target_digits);

}  // namespace coleman
