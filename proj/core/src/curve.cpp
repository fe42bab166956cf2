#include "coleman/curve.hpp"

#include <sstream>

namespace coleman {

CurvePoint CurvePoint::infinity(long p) {
  CurvePoint P;
  P.p_ = p;
  P.infinite_ = true;
  return P;
}

CurvePoint CurvePoint::affine(Padic x, Padic y) {
  if (x.prime() != y.prime())
    fail(ErrorCode::PrimeMismatch, "point coordinates over different primes");
  CurvePoint P;
  P.p_ = x.prime();
  P.x_ = std::move(x);
  P.y_ = std::move(y);
  return P;
}

const Padic& CurvePoint::x() const {
  if (infinite_) fail(ErrorCode::BadArguments, "x() of the point at infinity");
  return x_;
}

const Padic& CurvePoint::y() const {
  if (infinite_) fail(ErrorCode::BadArguments, "y() of the point at infinity");
  return y_;
}

std::string CurvePoint::str() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << "(" << x_.str() << ", " << y_.str() << ")";
  return os.str();
}

long choose_working_prec(long p, long genus, long target_digits) {
  long n = target_digits + 1 + genus + 2;
  for (int iter = 0; iter < 4; ++iter)
    n = target_digits + 1 + floor_log(p, std::max(n, 2 * genus + 1)) + genus + 2;
  return n;
}

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

HyperellipticCurve HyperellipticCurve::create(
    const std::vector<mpq_class>& f_low_to_high, long p, long target_digits) {
  if (p == 2 || !is_prime(p))
    fail(ErrorCode::BadPrime, "p must be an odd prime, got " + std::to_string(p));
  if (target_digits < 1)
    fail(ErrorCode::BadArguments, "target digits must be >= 1");
  long deg = static_cast<long>(f_low_to_high.size()) - 1;
  while (deg >= 0 && f_low_to_high[deg] == 0) --deg;
  if (deg < 3 || deg % 2 == 0)
    fail(ErrorCode::BadDegree,
         "f must have odd degree 2g+1 >= 3, got degree " + std::to_string(deg));
  if (f_low_to_high[deg] != 1)
    fail(ErrorCode::NotMonic, "f must be monic");
  for (const mpq_class& q : f_low_to_high)
    if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
      fail(ErrorCode::BadCoefficient,
           "coefficient denominator divisible by p: " + q.get_str());

  HyperellipticCurve c;
  c.p_ = p;
  c.genus_ = (deg - 1) / 2;
  c.target_digits_ = target_digits;
  c.working_prec_ = choose_working_prec(p, c.genus_, target_digits);
  c.f_rat_.assign(f_low_to_high.begin(), f_low_to_high.begin() + deg + 1);
  c.f_ = PadicPoly::from_rationals(c.f_rat_, p, c.working_prec_);
  c.fprime_ = c.f_.derivative();
  if (!mod_p_squarefree(c.f_))
    fail(ErrorCode::BadReduction, "f has a repeated root modulo p");
  return c;
}

HyperellipticCurve HyperellipticCurve::with_working_prec(long n) const {
  HyperellipticCurve c = *this;
  c.working_prec_ = n;
  c.f_ = PadicPoly::from_rationals(f_rat_, p_, n);
  c.fprime_ = c.f_.derivative();
  return c;
}

CurvePoint HyperellipticCurve::lift_point(const mpq_class& x0,
                                          long sign_residue) const {
  return lift_point(Padic::from_rational(x0, p_, working_prec_), sign_residue);
}

CurvePoint HyperellipticCurve::lift_point(const Padic& x0,
                                          long sign_residue) const {
  Padic fx = f_at(x0);
  if (fx.is_zero()) {
    // Weierstrass point to the stated precision: y = 0 with half the digits.
    long yprec = (fx.abs_prec() + 1) / 2;
    return CurvePoint::affine(x0, Padic::zero(p_, yprec));
  }
  long v = fx.valuation();
  if (v < 0)
    fail(ErrorCode::InfiniteDisc, "f(x0) has negative valuation (infinite disc)");
  if (v % 2 != 0)
    fail(ErrorCode::NotAResidue,
         "f(x0) has odd valuation; no Q_p-rational point over x0");
  Padic y;
  if (v == 0) {
    y = fx.sqrt_unit(sign_residue);
  } else {
    Padic scale = Padic::from_integer(p_, p_).pow(v / 2);
    Padic unit_part = fx / scale / scale;
    y = unit_part.sqrt_unit(sign_residue) * scale;
  }
  return CurvePoint::affine(x0, y);
}

bool HyperellipticCurve::on_curve(const CurvePoint& P) const {
  if (P.is_infinity()) return true;
  Padic r = P.y() * P.y() - f_at(P.x());
  return r.is_zero();
}

void HyperellipticCurve::require_on_curve(const CurvePoint& P) const {
  if (!on_curve(P))
    fail(ErrorCode::NotOnCurve, "point does not satisfy y^2 = f(x): " + P.str());
}

DiscDescriptor HyperellipticCurve::classify_disc(const CurvePoint& P) const {
  DiscDescriptor d;
  if (P.is_infinity()) {
    d.infinite = true;
    d.weierstrass = true;  // deg f odd: the infinite disc is Weierstrass
    return d;
  }
  if (!P.x().is_integral())
    fail(ErrorCode::InfiniteDisc,
         "points with |x| > 1 lie in the infinite disc and are not supported");
  d.x_residue = P.x().residue();
  d.y_residue = P.y().is_integral() ? P.y().residue() : 0;
  d.weierstrass = (d.y_residue == 0);
  return d;
}

CurvePoint HyperellipticCurve::involution(const CurvePoint& P) const {
  if (P.is_infinity()) return P;
  return CurvePoint::affine(P.x(), -P.y());
}

CurvePoint HyperellipticCurve::frobenius_point(const CurvePoint& P) const {
  DiscDescriptor d = classify_disc(P);
  if (d.infinite || d.weierstrass)
    fail(ErrorCode::WeierstrassDisc,
         "Frobenius point needs a non-Weierstrass affine point");
  Padic xq = P.x().pow(p_);
  Padic fq = f_at(xq);
  // x^p has the residue of x, so phi(P) stays in P's disc; the branch of the
  // square root is fixed by the residue of y (y^p = y mod p over F_p).
  Padic yq = fq.sqrt_unit(d.y_residue);
  return CurvePoint::affine(xq, yq);
}

CurvePoint HyperellipticCurve::teichmuller_point(const CurvePoint& P) const {
  DiscDescriptor d = classify_disc(P);
  if (d.infinite || d.weierstrass)
    fail(ErrorCode::WeierstrassDisc,
         "Teichmuller point needs a non-Weierstrass affine point");
  // The Teichmuller lift over the residue 0 is 0 itself.
  Padic xt = d.x_residue == 0 ? Padic::zero(p_, working_prec_)
                              : P.x().teichmuller();
  Padic yt = f_at(xt).sqrt_unit(d.y_residue);
  return CurvePoint::affine(xt, yt);
}

CurvePoint HyperellipticCurve::nearest_weierstrass_point(
    const CurvePoint& P) const {
  DiscDescriptor d = classify_disc(P);
  if (d.infinite)
    fail(ErrorCode::InfiniteDisc, "the infinite disc has no finite Weierstrass point");
  if (!d.weierstrass)
    fail(ErrorCode::WeierstrassDisc, "point is not in a Weierstrass disc");
  // Hensel lift of the simple root of f mod p under x_residue.
  Padic a = Padic::from_integer(d.x_residue, p_, working_prec_);
  if (d.x_residue == 0) a = Padic::zero(p_, working_prec_);
  for (long known = 1; known < working_prec_; known *= 2)
    a = a - f_at(a) / fprime_.eval(a);
  Padic fa = f_at(a);
  if (!fa.is_zero())
    fail(ErrorCode::InsufficientPrecision, "Hensel iteration did not converge");
  return CurvePoint::affine(a, Padic::zero(p_, working_prec_));
}

}  // namespace coleman
