#pragma once

#include <vector>

#include "coleman/padic.hpp"

namespace coleman {

// Power series in t over Q_p truncated modulo t^order; the truncation order is
// explicit data. Arithmetic propagates the minimum operand order.
class PadicSeries {
 public:
  PadicSeries(long p, long order);

  static PadicSeries constant(const Padic& c, long order);
  // c0 + c1*t
  static PadicSeries linear(const Padic& c0, const Padic& c1, long order);

  long prime() const { return p_; }
  long order() const { return order_; }
  Padic coeff(long i) const;
  void set_coeff(long i, const Padic& c);

  PadicSeries truncated(long new_order) const;
  // Extends with exact-zero coefficients (used as a Newton seed only).
  PadicSeries padded(long new_order) const;

  PadicSeries operator+(const PadicSeries& rhs) const;
  PadicSeries operator-(const PadicSeries& rhs) const;
  PadicSeries operator*(const PadicSeries& rhs) const;
  // Division; rhs must have a unit constant term.
  PadicSeries operator/(const PadicSeries& rhs) const;
  PadicSeries scaled(const Padic& c) const;

  PadicSeries derivative() const;
  // Termwise c_i -> c_i/(i+1) t^(i+1); output order = order + 1. Division by
  // p-divisible i+1 lowers that coefficient's absolute precision.
  PadicSeries integrated() const;

  // Newton square root with s(0) = root_of_constant (its square must equal
  // the unit constant term).
  PadicSeries sqrt(const Padic& root_of_constant) const;

  // Horner evaluation; requires v_p(t0) >= 1 so the truncation error is
  // below p^(order * v(t0)), which caps the result precision.
  Padic eval(const Padic& t0) const;

  bool is_zero() const;

 private:
  long p_;
  long order_;
  std::vector<Padic> c_;
};

}  // namespace coleman
