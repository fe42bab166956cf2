#include "coleman/dagger.hpp"

namespace coleman {

bool DaggerForm::is_zero() const {
  for (const auto& [j, B] : terms_)
    if (!B.is_zero()) return false;
  return true;
}

void DaggerForm::add_term(long j, const PadicPoly& B) {
  if (B.is_zero()) return;
  auto it = terms_.find(j);
  if (it == terms_.end()) {
    terms_.emplace(j, B);
  } else {
    it->second = it->second + B;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DaggerForm DaggerForm::operator+(const DaggerForm& rhs) const {
  DaggerForm out = *this;
  for (const auto& [j, B] : rhs.terms_) out.add_term(j, B);
  return out;
}

DaggerForm DaggerForm::operator-(const DaggerForm& rhs) const {
  DaggerForm out = *this;
  for (const auto& [j, B] : rhs.terms_)
    out.add_term(j, B.scaled(Padic::from_integer(-1, rhs.p_)));
  return out;
}

DaggerForm DaggerForm::scaled(const Padic& c) const {
  DaggerForm out(p_, role_);
  for (const auto& [j, B] : terms_) out.add_term(j, B.scaled(c));
  return out;
}

long DaggerForm::max_y_exponent() const {
  long m = 0;
  for (const auto& [j, B] : terms_)
    if (!B.is_zero()) m = std::max(m, j);
  return m;
}

long DaggerForm::min_y_exponent() const {
  long m = 0;
  for (const auto& [j, B] : terms_)
    if (!B.is_zero()) m = std::min(m, j);
  return m;
}

bool DaggerForm::all_exponents_even() const {
  for (const auto& [j, B] : terms_)
    if (!B.is_zero() && (j % 2 != 0)) return false;
  return true;
}

bool DaggerForm::all_exponents_odd() const {
  for (const auto& [j, B] : terms_)
    if (!B.is_zero() && (j % 2 == 0)) return false;
  return true;
}

DaggerForm dagger_differential(const DaggerForm& h,
                               const HyperellipticCurve& curve) {
  if (h.role() != DaggerForm::Role::Function)
    fail(ErrorCode::BadArguments, "dagger_differential needs a function");
  long p = h.prime();
  DaggerForm out = DaggerForm::odd_one_form(p);
  const PadicPoly& f = curve.f();
  const PadicPoly& fp = curve.f_derivative();
  Padic two = Padic::from_integer(2, p);
  for (const auto& [j, B] : h.terms()) {
    PadicPoly term = f * B.derivative().scaled(two) -
                     fp * B.scaled(Padic::from_integer(j, p));
    out.add_term(j + 1, term);
  }
  return out;
}

Padic evaluate_dagger(const DaggerForm& h, const CurvePoint& P) {
  if (P.is_infinity())
    fail(ErrorCode::WeierstrassDisc,
         "A-dagger elements need not converge at infinity");
  long p = h.prime();
  if (h.max_y_exponent() > 0 && (P.y().is_zero() || P.y().valuation() > 0))
    fail(ErrorCode::WeierstrassDisc,
         "A-dagger elements do not converge in Weierstrass discs");
  Padic acc = Padic::zero(p, kExactPrec);
  Padic yinv;
  if (h.max_y_exponent() > 0) yinv = P.y().inv();
  for (const auto& [j, B] : h.terms()) {
    Padic val = B.eval(P.x());
    if (j > 0) {
      val = val * yinv.pow(j);
    } else if (j < 0) {
      val = val * P.y().pow(-j);
    }
    acc = acc + val;
  }
  return acc;
}

}  // namespace coleman
