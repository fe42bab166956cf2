#include "coleman/padic.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <vector>

namespace coleman {

namespace {

// Working relative precision used when an operation on exact sentinel values
// has to produce a genuinely p-adic (infinite-expansion) result.
constexpr long kExactOpRel = 256;

long clamp_prec(long n) { return std::min(n, kExactPrec); }

long sat_add(long a, long b) {
  if (a >= kExactPrec || b >= kExactPrec) return kExactPrec;
  return clamp_prec(a + b);
}

const char* error_names[] = {
    "BAD_PRIME",       "BAD_DEGREE",          "NOT_MONIC",
    "BAD_COEFF",       "BAD_REDUCTION",       "PRIME_MISMATCH",
    "DIVISION_BY_ZERO", "NOT_A_RESIDUE",      "BAD_RESIDUE_CHOICE",
    "NOT_A_UNIT",      "NON_INTEGRAL",        "PARSE_ERROR",
    "NOT_ON_CURVE",    "INFINITE_DISC",       "WEIERSTRASS_DISC",
    "DISC_MISMATCH",   "POLE_AT_ENDPOINT",    "EVEN_FORM",
    "DIVERGENT_EXACT_PART", "SINGULAR_SYSTEM", "INSUFFICIENT_PRECISION",
    "BAD_ARGS",        "MALFORMED_FILE",
};

}  // namespace

const char* error_code_name(ErrorCode code) {
  return error_names[static_cast<int>(code)];
}

long floor_log(long base, long n) {
  if (base < 2 || n < 1) fail(ErrorCode::BadArguments, "floor_log domain");
  long e = 0;
  long power = 1;
  while (power <= n / base) {
    power *= base;
    ++e;
  }
  return e;
}

mpz_class pow_p(long p, long e) {
  if (e < 0) fail(ErrorCode::BadArguments, "pow_p: negative exponent");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e));
  return r;
}

mpz_class remove_p(const mpz_class& n, long p, long& v) {
  if (n == 0) fail(ErrorCode::BadArguments, "remove_p: zero");
  mpz_class unit;
  mpz_class pz = p;
  v = static_cast<long>(
      mpz_remove(unit.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
  return unit;
}

Padic Padic::make(long p, long val, const mpz_class& unit, long abs) {
  Padic x;
  x.p_ = p;
  x.abs_ = clamp_prec(abs);
  long rel = x.abs_ - val;
  if (rel <= 0) return zero(p, x.abs_);
  mpz_class u = unit;
  // Exact sentinel values keep their (signed) integer unit; finite-precision
  // values are reduced into [0, p^rel).
  if (rel < kExactPrec / 2) {
    mpz_class mod = pow_p(p, rel);
    mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  }
  if (u == 0) return zero(p, x.abs_);
  long extra = 0;
  u = remove_p(u, p, extra);
  if (extra > 0) {
    val += extra;
    rel = x.abs_ - val;
    if (rel <= 0) return zero(p, x.abs_);
    if (rel < kExactPrec / 2) {
      mpz_class mod = pow_p(p, rel);
      mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    }
    if (u == 0) return zero(p, x.abs_);
  }
  x.zero_ = false;
  x.val_ = val;
  x.unit_ = u;
  return x;
}

Padic Padic::zero(long p, long abs_prec) {
  Padic x;
  x.p_ = p;
  x.zero_ = true;
  x.abs_ = clamp_prec(abs_prec);
  x.val_ = 0;
  x.unit_ = 0;
  return x;
}

Padic Padic::from_integer(long value, long p, long abs_prec) {
  return from_mpz(mpz_class(value), p, abs_prec);
}

Padic Padic::from_mpz(const mpz_class& value, long p, long abs_prec) {
  if (value == 0) return zero(p, abs_prec);
  return make(p, 0, value, abs_prec);
}

Padic Padic::from_rational(const mpz_class& num, const mpz_class& den, long p,
                           long abs_prec) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
  if (num == 0) return zero(p, abs_prec);
  long vn = 0, vd = 0;
  mpz_class un = remove_p(num, p, vn);
  mpz_class ud = remove_p(den, p, vd);
  long val = vn - vd;
  long rel = clamp_prec(abs_prec) - val;
  if (rel <= 0) return zero(p, abs_prec);
  if (rel >= kExactPrec / 2) rel = kExactOpRel;  // rationals are never exact
  mpz_class mod = pow_p(p, rel);
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), ud.get_mpz_t(), mod.get_mpz_t()) == 0)
    fail(ErrorCode::DivisionByZero, "denominator not invertible");
  mpz_class u = un * inv;
  return make(p, val, u, val + rel);
}

Padic Padic::from_rational(const mpq_class& q, long p, long abs_prec) {
  return from_rational(q.get_num(), q.get_den(), p, abs_prec);
}

Padic Padic::from_residue(const mpz_class& residue, long shift, long p,
                          long known_digits) {
  if (known_digits <= 0) return zero(p, shift);
  return make(p, shift, residue, shift + known_digits);
}

long Padic::residue() const {
  if (!is_integral()) fail(ErrorCode::NonIntegral, "residue of non-integral value");
  if (zero_ || val_ > 0) return 0;
  mpz_class r;
  mpz_class pz = p_;
  mpz_fdiv_r(r.get_mpz_t(), unit_.get_mpz_t(), pz.get_mpz_t());
  return r.get_si();
}

void Padic::require_same_prime(const Padic& rhs) const {
  if (p_ == 0 || rhs.p_ == 0) fail(ErrorCode::BadArguments, "uninitialized p-adic");
  if (p_ != rhs.p_) fail(ErrorCode::PrimeMismatch, "operands over different primes");
}

Padic Padic::operator-() const {
  if (zero_) return *this;
  if (rel_prec() >= kExactPrec / 2) return make(p_, val_, -unit_, abs_);
  mpz_class mod = pow_p(p_, rel_prec());
  return make(p_, val_, mod - unit_, abs_);
}

Padic Padic::operator+(const Padic& rhs) const {
  require_same_prime(rhs);
  long abs = std::min(abs_, rhs.abs_);
  if (zero_ && rhs.zero_) return zero(p_, abs);
  if (zero_) return rhs.truncated(abs);
  if (rhs.zero_) return truncated(abs);
  long base = std::min(val_, rhs.val_);
  mpz_class sum = unit_ * pow_p(p_, val_ - base) +
                  rhs.unit_ * pow_p(p_, rhs.val_ - base);
  return make(p_, base, sum, abs);
}

Padic Padic::operator-(const Padic& rhs) const { return *this + (-rhs); }

Padic Padic::operator*(const Padic& rhs) const {
  require_same_prime(rhs);
  if (zero_ || rhs.zero_) {
    long abs = zero_ && rhs.zero_ ? sat_add(abs_, rhs.abs_)
                                  : sat_add(zero_ ? abs_ : rhs.abs_,
                                            zero_ ? rhs.val_ : val_);
    return zero(p_, abs);
  }
  long rel = std::min(rel_prec(), rhs.rel_prec());
  long val = val_ + rhs.val_;
  mpz_class u = unit_ * rhs.unit_;
  return make(p_, val, u, sat_add(val, rel));
}

Padic Padic::inv() const {
  if (zero_) fail(ErrorCode::DivisionByZero, "inverse of (indistinguishable) zero");
  long rel = rel_prec();
  if (rel >= kExactPrec / 2) rel = kExactOpRel;
  mpz_class mod = pow_p(p_, rel);
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
    fail(ErrorCode::DivisionByZero, "unit not invertible");
  return make(p_, -val_, inv, -val_ + rel);
}

Padic Padic::operator/(const Padic& rhs) const {
  require_same_prime(rhs);
  if (rhs.zero_) fail(ErrorCode::DivisionByZero, "division by (indistinguishable) zero");
  if (zero_) return zero(p_, abs_ - rhs.val_);
  return *this * rhs.inv();
}

Padic Padic::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Padic acc = one(p_);
  Padic base = *this;
  long k = e;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

bool Padic::operator==(const Padic& rhs) const {
  require_same_prime(rhs);
  Padic d = *this - rhs;
  return d.is_zero();
}

Padic Padic::truncated(long new_abs) const {
  if (new_abs >= abs_) return *this;
  if (zero_) return zero(p_, new_abs);
  return make(p_, val_, unit_, new_abs);
}

Padic Padic::sqrt_unit(long seed_residue) const {
  if (zero_ || val_ != 0) fail(ErrorCode::NotAUnit, "sqrt_unit needs a unit");
  long p = p_;
  mpz_class a0;
  mpz_class pz = p;
  mpz_fdiv_r(a0.get_mpz_t(), unit_.get_mpz_t(), pz.get_mpz_t());
  long seed = ((seed_residue % p) + p) % p;
  if (seed == 0 || (seed * seed - a0.get_si()) % p != 0)
    fail(ErrorCode::BadResidueChoice, "seed^2 != a (mod p)");
  long n = rel_prec();
  if (n >= kExactPrec / 2) n = kExactOpRel;
  mpz_class r = seed;
  long known = 1;
  while (known < n) {
    long next = std::min(2 * known, n);
    mpz_class mod = pow_p(p, next);
    mpz_class rinv;
    if (mpz_invert(rinv.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t()) == 0)
      fail(ErrorCode::NotAResidue, "sqrt iteration degenerated");
    mpz_class a = unit_;
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    mpz_class half;
    mpz_class two = 2;
    mpz_invert(half.get_mpz_t(), two.get_mpz_t(), mod.get_mpz_t());
    r = (r + a * rinv) * half;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    known = next;
  }
  Padic out = make(p, 0, r, n);
  // A wrong branch or a non-residue cannot satisfy r^2 = a.
  Padic check = out * out - truncated(n);
  if (!check.is_zero()) fail(ErrorCode::NotAResidue, "argument is not a square");
  return out;
}

Padic Padic::teichmuller() const {
  if (zero_ || val_ != 0) fail(ErrorCode::NotAUnit, "teichmuller needs a unit");
  long p = p_;
  long n = rel_prec();
  if (n >= kExactPrec / 2) n = kExactOpRel;
  mpz_class pz = p;
  mpz_class t;
  mpz_fdiv_r(t.get_mpz_t(), unit_.get_mpz_t(), pz.get_mpz_t());
  long known = 1;
  while (known < n) {
    long next = std::min(2 * known, n);
    mpz_class mod = pow_p(p, next);
    // Newton for t^(p-1) - 1 = 0.
    mpz_class tp2;
    mpz_powm_ui(tp2.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p - 2),
                mod.get_mpz_t());
    mpz_class tp1 = tp2 * t;
    mpz_fdiv_r(tp1.get_mpz_t(), tp1.get_mpz_t(), mod.get_mpz_t());
    mpz_class deriv = mpz_class(p - 1) * tp2;
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), deriv.get_mpz_t(), mod.get_mpz_t()) == 0)
      fail(ErrorCode::NotAUnit, "teichmuller iteration degenerated");
    t = t - (tp1 - 1) * dinv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
    known = next;
  }
  return make(p, 0, t, n);
}

mpz_class Padic::balanced_lift() const {
  if (!is_integral()) fail(ErrorCode::NonIntegral, "balanced lift of non-integral");
  if (zero_) return 0;
  if (abs_ >= kExactPrec / 2) return unit_ * pow_p(p_, val_);
  mpz_class v = unit_ * pow_p(p_, val_);
  mpz_class mod = pow_p(p_, abs_);
  mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  if (v * 2 > mod) v -= mod;
  return v;
}

std::string Padic::str() const {
  std::ostringstream os;
  if (abs_ >= kExactPrec / 2) {
    // Structural constants; shown as plain integers (debug output only).
    if (zero_) return "0 (exact)";
    os << unit_ * pow_p(p_, val_ >= 0 ? val_ : 0);
    if (val_ < 0) os << "/" << pow_p(p_, -val_);
    os << " (exact)";
    return os.str();
  }
  auto o_term = [&](std::ostream& s) {
    s << "O(" << p_;
    if (abs_ != 1) s << "^" << abs_;
    s << ")";
  };
  if (zero_) {
    o_term(os);
    return os.str();
  }
  mpz_class u = unit_;
  bool first = true;
  for (long k = val_; k < abs_; ++k) {
    mpz_class digit;
    mpz_class pz = p_;
    mpz_fdiv_qr(u.get_mpz_t(), digit.get_mpz_t(), u.get_mpz_t(), pz.get_mpz_t());
    long d = digit.get_si();
    if (d == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << d;
    } else if (d == 1) {
      os << p_;
      if (k != 1) os << "^" << k;
    } else {
      os << d << "*" << p_;
      if (k != 1) os << "^" << k;
    }
  }
  if (!first) os << " + ";
  o_term(os);
  return os.str();
}

namespace {

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// Parses "p", "p^k", with the base checked against p. Returns exponent.
long parse_power(const std::string& term, long p, size_t pos) {
  size_t caret = term.find('^', pos);
  std::string base = caret == std::string::npos ? term.substr(pos)
                                                : term.substr(pos, caret - pos);
  if (base != std::to_string(p))
    fail(ErrorCode::ParseError, "power base does not match the prime: " + term);
  if (caret == std::string::npos) return 1;
  std::string exp = term.substr(caret + 1);
  if (exp.empty()) fail(ErrorCode::ParseError, "missing exponent: " + term);
  try {
    return std::stol(exp);
  } catch (...) {
    fail(ErrorCode::ParseError, "bad exponent: " + term);
  }
}

}  // namespace

Padic Padic::parse(const std::string& raw, long p, long default_abs_prec) {
  std::string text = strip_ws(raw);
  if (text.empty()) fail(ErrorCode::ParseError, "empty p-adic literal");
  if (text.find("O(") == std::string::npos) {
    // Plain integer or rational.
    if (default_abs_prec <= 0)
      fail(ErrorCode::ParseError, "rational literal needs a target precision");
    try {
      mpq_class q(text);
      q.canonicalize();
      return from_rational(q, p, default_abs_prec);
    } catch (const std::invalid_argument&) {
      fail(ErrorCode::ParseError, "bad rational literal: " + raw);
    }
  }
  // Sum of digit terms plus a trailing O(p^n).
  bool have_o = false;
  long abs = 0;
  std::vector<std::pair<long, long>> terms;  // (digit, exponent)
  size_t start = 0;
  while (start <= text.size()) {
    size_t plus = text.find('+', start);
    std::string term = plus == std::string::npos ? text.substr(start)
                                                 : text.substr(start, plus - start);
    start = plus == std::string::npos ? text.size() + 1 : plus + 1;
    if (term.empty()) continue;
    if (term.rfind("O(", 0) == 0) {
      if (term.back() != ')') fail(ErrorCode::ParseError, "unterminated O(...)");
      std::string inner = term.substr(2, term.size() - 3);
      abs = parse_power(inner, p, 0);
      have_o = true;
      continue;
    }
    // Forms: d | d*p | d*p^k | p | p^k
    long digit = 1;
    long exp = 0;
    size_t star = term.find('*');
    if (star != std::string::npos) {
      try {
        digit = std::stol(term.substr(0, star));
      } catch (...) {
        fail(ErrorCode::ParseError, "bad digit: " + term);
      }
      exp = parse_power(term, p, star + 1);
    } else if (term.find('^') != std::string::npos ||
               term == std::to_string(p)) {
      exp = parse_power(term, p, 0);
    } else {
      try {
        digit = std::stol(term);
      } catch (...) {
        fail(ErrorCode::ParseError, "bad term: " + term);
      }
      exp = 0;
    }
    if (digit < 0 || digit >= p)
      fail(ErrorCode::ParseError, "digit out of range [0, p): " + term);
    terms.emplace_back(digit, exp);
  }
  if (!have_o) fail(ErrorCode::ParseError, "missing O(p^n) term");
  if (terms.empty()) return zero(p, abs);
  long base = terms.front().second;
  for (const auto& [d, e] : terms) base = std::min(base, e);
  mpz_class total = 0;
  for (const auto& [d, e] : terms) total += mpz_class(d) * pow_p(p, e - base);
  return make(p, base, total, abs);
}

std::ostream& operator<<(std::ostream& os, const Padic& x) {
  return os << x.str();
}

}  // namespace coleman
