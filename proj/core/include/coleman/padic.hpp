#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "coleman/errors.hpp"

namespace coleman {

// Absolute-precision sentinel for structurally exact constants (small
// integers, structural zeros). Values at this precision behave as exact
// under the min-precision propagation rules.
inline constexpr long kExactPrec = 1L << 30;

// Largest e >= 0 with base^e <= n (n >= 1).
long floor_log(long base, long n);

// p^e as an mpz (e >= 0).
mpz_class pow_p(long p, long e);

// p-adic valuation of a nonzero integer; v is the exponent, returns n / p^v.
mpz_class remove_p(const mpz_class& n, long p, long& v);

// An element of Q_p known to finite absolute precision: value
// p^valuation * unit with unit a p-adic unit whose first
// (abs_prec - valuation) base-p digits are known. Zero stores only the
// absolute precision cap ("indistinguishable from 0 below p^abs_prec").
// Values are immutable after construction.
class Padic {
 public:
  Padic() = default;  // unusable placeholder (prime 0); for containers only

  static Padic zero(long p, long abs_prec);
  static Padic from_integer(long value, long p, long abs_prec = kExactPrec);
  static Padic from_mpz(const mpz_class& value, long p, long abs_prec);
  static Padic from_rational(const mpz_class& num, const mpz_class& den, long p,
                             long abs_prec);
  static Padic from_rational(const mpq_class& q, long p, long abs_prec);
  // value = residue * p^shift, residue known modulo p^(known_digits).
  static Padic from_residue(const mpz_class& residue, long shift, long p,
                            long known_digits);
  static Padic one(long p) { return from_integer(1, p); }

  long prime() const { return p_; }
  bool valid() const { return p_ != 0; }
  bool is_zero() const { return zero_; }
  // Valuation; for zero returns abs_prec (all that is known is v >= abs_prec).
  long valuation() const { return zero_ ? abs_ : val_; }
  long abs_prec() const { return abs_; }
  long rel_prec() const { return zero_ ? 0 : abs_ - val_; }
  const mpz_class& unit() const { return unit_; }

  bool is_unit() const { return !zero_ && val_ == 0; }
  bool is_integral() const { return zero_ ? abs_ >= 0 : val_ >= 0; }
  // Reduction modulo p in [0, p); requires an integral value.
  long residue() const;

  Padic operator-() const;
  Padic operator+(const Padic& rhs) const;
  Padic operator-(const Padic& rhs) const;
  Padic operator*(const Padic& rhs) const;
  Padic operator/(const Padic& rhs) const;
  Padic inv() const;
  Padic pow(long e) const;

  // Equality means: indistinguishable at the shared (minimum) precision.
  bool operator==(const Padic& rhs) const;
  bool operator!=(const Padic& rhs) const { return !(*this == rhs); }

  // Truncation to a lower absolute precision (new_abs >= abs is a no-op).
  Padic truncated(long new_abs) const;

  // Newton square root of a unit; seed selects the branch and must satisfy
  // seed^2 = a (mod p). Result r has r = seed (mod p) and r^2 = a to the
  // precision of a.
  Padic sqrt_unit(long seed_residue) const;

  // The Teichmuller lift t of this unit: t^p = t, t = a (mod p), to the
  // absolute precision of a.
  Padic teichmuller() const;

  // Canonical rendering "d*p^v + ... + O(p^n)"; "O(p^n)" for zero.
  std::string str() const;
  // Accepts the render grammar and plain integers/rationals "a/b" (the
  // latter need default_abs_prec > 0).
  static Padic parse(const std::string& text, long p, long default_abs_prec = -1);

  // Symmetric integer lift in (-p^abs/2, p^abs/2]; requires integral value.
  mpz_class balanced_lift() const;

 private:
  static Padic make(long p, long val, const mpz_class& unit, long abs);
  void require_same_prime(const Padic& rhs) const;

  long p_ = 0;
  long val_ = 0;
  long abs_ = 0;
  bool zero_ = true;
  mpz_class unit_;
};

std::ostream& operator<<(std::ostream& os, const Padic& x);

}  // namespace coleman
