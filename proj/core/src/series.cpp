#include "coleman/series.hpp"

#include <algorithm>

namespace coleman {

PadicSeries::PadicSeries(long p, long order) : p_(p), order_(order) {
  if (order < 1) fail(ErrorCode::BadArguments, "series order must be >= 1");
  c_.assign(order, Padic::zero(p, kExactPrec));
}

PadicSeries PadicSeries::constant(const Padic& c, long order) {
  PadicSeries s(c.prime(), order);
  s.c_[0] = c;
  return s;
}

PadicSeries PadicSeries::linear(const Padic& c0, const Padic& c1, long order) {
  PadicSeries s(c0.prime(), order);
  s.c_[0] = c0;
  if (order > 1) s.c_[1] = c1;
  return s;
}

Padic PadicSeries::coeff(long i) const {
  if (i < 0 || i >= order_)
    fail(ErrorCode::BadArguments, "series coefficient beyond truncation order");
  return c_[i];
}

void PadicSeries::set_coeff(long i, const Padic& c) {
  if (i < 0 || i >= order_)
    fail(ErrorCode::BadArguments, "series coefficient beyond truncation order");
  c_[i] = c;
}

PadicSeries PadicSeries::truncated(long new_order) const {
  if (new_order >= order_) return *this;
  PadicSeries s(p_, new_order);
  std::copy(c_.begin(), c_.begin() + new_order, s.c_.begin());
  return s;
}

PadicSeries PadicSeries::padded(long new_order) const {
  if (new_order <= order_) return truncated(new_order);
  PadicSeries s(p_, new_order);
  std::copy(c_.begin(), c_.end(), s.c_.begin());
  return s;
}

PadicSeries PadicSeries::operator+(const PadicSeries& rhs) const {
  long n = std::min(order_, rhs.order_);
  PadicSeries s(p_, n);
  for (long i = 0; i < n; ++i) s.c_[i] = c_[i] + rhs.c_[i];
  return s;
}

PadicSeries PadicSeries::operator-(const PadicSeries& rhs) const {
  long n = std::min(order_, rhs.order_);
  PadicSeries s(p_, n);
  for (long i = 0; i < n; ++i) s.c_[i] = c_[i] - rhs.c_[i];
  return s;
}

PadicSeries PadicSeries::operator*(const PadicSeries& rhs) const {
  long n = std::min(order_, rhs.order_);
  PadicSeries s(p_, n);
  for (long i = 0; i < n; ++i) {
    if (c_[i].is_zero() && c_[i].abs_prec() >= kExactPrec / 2) continue;
    for (long j = 0; i + j < n && j < rhs.order_; ++j)
      s.c_[i + j] = s.c_[i + j] + c_[i] * rhs.c_[j];
  }
  return s;
}

PadicSeries PadicSeries::operator/(const PadicSeries& rhs) const {
  long n = std::min(order_, rhs.order_);
  if (!rhs.c_[0].is_unit())
    fail(ErrorCode::NotAUnit, "series division needs a unit constant term");
  PadicSeries q(p_, n);
  Padic inv0 = rhs.c_[0].inv();
  for (long i = 0; i < n; ++i) {
    Padic acc = c_[i];
    for (long k = 0; k < i; ++k) acc = acc - q.c_[k] * rhs.c_[i - k];
    q.c_[i] = acc * inv0;
  }
  return q;
}

PadicSeries PadicSeries::scaled(const Padic& s) const {
  PadicSeries out(p_, order_);
  for (long i = 0; i < order_; ++i) out.c_[i] = c_[i] * s;
  return out;
}

PadicSeries PadicSeries::derivative() const {
  if (order_ == 1) return PadicSeries(p_, 1);
  PadicSeries d(p_, order_ - 1);
  for (long i = 1; i < order_; ++i)
    d.c_[i - 1] = c_[i] * Padic::from_integer(i, p_);
  return d;
}

PadicSeries PadicSeries::integrated() const {
  PadicSeries s(p_, order_ + 1);
  for (long i = 0; i < order_; ++i)
    s.c_[i + 1] = c_[i] / Padic::from_integer(i + 1, p_);
  return s;
}

PadicSeries PadicSeries::sqrt(const Padic& root_of_constant) const {
  if (!c_[0].is_unit())
    fail(ErrorCode::NotAUnit, "series sqrt needs a unit constant term");
  Padic check = root_of_constant * root_of_constant - c_[0];
  if (!check.is_zero())
    fail(ErrorCode::BadResidueChoice, "root_of_constant^2 != constant term");
  Padic half = Padic::from_integer(1, p_) / Padic::from_integer(2, p_);
  PadicSeries s = PadicSeries::constant(root_of_constant, 1);
  long known = 1;
  while (known < order_) {
    long next = std::min(2 * known, order_);
    PadicSeries sp = s.padded(next);
    s = (sp + truncated(next) / sp).scaled(half);
    known = next;
  }
  return s;
}

Padic PadicSeries::eval(const Padic& t0) const {
  if (!t0.is_zero() && t0.valuation() < 1)
    fail(ErrorCode::BadArguments, "series evaluation needs v_p(t0) >= 1");
  Padic acc = Padic::zero(p_, kExactPrec);
  for (long i = order_ - 1; i >= 0; --i) acc = acc * t0 + c_[i];
  long tail = order_ * (t0.is_zero() ? t0.abs_prec() : t0.valuation());
  return acc.truncated(std::min<long>(acc.abs_prec(), tail));
}

bool PadicSeries::is_zero() const {
  for (const Padic& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace coleman
