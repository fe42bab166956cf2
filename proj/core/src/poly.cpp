#include "coleman/poly.hpp"

#include <algorithm>

#include "coleman/series.hpp"

namespace coleman {

PadicPoly::PadicPoly(long p, std::vector<Padic> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  for (const Padic& c : c_)
    if (c.valid() && c.prime() != p_)
      fail(ErrorCode::PrimeMismatch, "polynomial coefficient prime mismatch");
  trim();
}

void PadicPoly::trim() {
  // Only structurally exact zeros are dropped; a trailing O(p^k) coefficient
  // is genuine (unknown) data and is kept.
  while (!c_.empty() && c_.back().is_zero() &&
         c_.back().abs_prec() >= kExactPrec / 2)
    c_.pop_back();
}

PadicPoly PadicPoly::from_rationals(const std::vector<mpq_class>& coeffs, long p,
                                    long abs_prec) {
  std::vector<Padic> c;
  c.reserve(coeffs.size());
  for (const mpq_class& q : coeffs) c.push_back(Padic::from_rational(q, p, abs_prec));
  return PadicPoly(p, std::move(c));
}

Padic PadicPoly::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(c_.size())) return Padic::zero(p_, kExactPrec);
  return c_[i];
}

Padic PadicPoly::eval(const Padic& x) const {
  Padic acc = Padic::zero(p_, kExactPrec);
  for (long i = degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

PadicPoly PadicPoly::derivative() const {
  std::vector<Padic> c;
  for (long i = 1; i <= degree(); ++i)
    c.push_back(c_[i] * Padic::from_integer(i, p_));
  return PadicPoly(p_, std::move(c));
}

PadicPoly PadicPoly::operator+(const PadicPoly& rhs) const {
  std::vector<Padic> c;
  long n = std::max(degree(), rhs.degree());
  for (long i = 0; i <= n; ++i) c.push_back(coeff(i) + rhs.coeff(i));
  return PadicPoly(p_, std::move(c));
}

PadicPoly PadicPoly::operator-(const PadicPoly& rhs) const {
  std::vector<Padic> c;
  long n = std::max(degree(), rhs.degree());
  for (long i = 0; i <= n; ++i) c.push_back(coeff(i) - rhs.coeff(i));
  return PadicPoly(p_, std::move(c));
}

PadicPoly PadicPoly::operator*(const PadicPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return PadicPoly(p_);
  std::vector<Padic> c(degree() + rhs.degree() + 1, Padic::zero(p_, kExactPrec));
  for (long i = 0; i <= degree(); ++i)
    for (long j = 0; j <= rhs.degree(); ++j) c[i + j] = c[i + j] + c_[i] * rhs.c_[j];
  return PadicPoly(p_, std::move(c));
}

PadicPoly PadicPoly::scaled(const Padic& s) const {
  std::vector<Padic> c;
  c.reserve(c_.size());
  for (const Padic& x : c_) c.push_back(x * s);
  return PadicPoly(p_, std::move(c));
}

PadicPoly PadicPoly::shifted(long k) const {
  if (is_zero()) return *this;
  std::vector<Padic> c(k, Padic::zero(p_, kExactPrec));
  c.insert(c.end(), c_.begin(), c_.end());
  return PadicPoly(p_, std::move(c));
}

PadicSeries PadicPoly::compose(const PadicSeries& x) const {
  PadicSeries acc = PadicSeries::constant(Padic::zero(p_, kExactPrec), x.order());
  for (long i = degree(); i >= 0; --i) {
    acc = acc * x;
    acc.set_coeff(0, acc.coeff(0) + c_[i]);
  }
  return acc;
}

std::vector<long> PadicPoly::mod_p() const {
  std::vector<long> out;
  out.reserve(c_.size());
  for (const Padic& c : c_) out.push_back(c.residue());
  return fp::trim(std::move(out));
}

namespace fp {

std::vector<long> trim(std::vector<long> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::vector<long> derivative(const std::vector<long>& a, long p) {
  std::vector<long> d;
  for (long i = 1; i < static_cast<long>(a.size()); ++i)
    d.push_back((a[i] * (i % p)) % p);
  return trim(std::move(d));
}

namespace {
long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return ((t % p) + p) % p;
}
}  // namespace

std::vector<long> rem(std::vector<long> a, const std::vector<long>& b, long p) {
  a = trim(std::move(a));
  if (b.empty()) fail(ErrorCode::DivisionByZero, "F_p remainder by zero");
  long linv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    long q = (a.back() * linv) % p;
    long shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      long& t = a[shift + i];
      t = ((t - q * b[i]) % p + p) % p;
    }
    a = trim(std::move(a));
  }
  return a;
}

std::vector<long> gcd(std::vector<long> a, std::vector<long> b, long p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    std::vector<long> r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long linv = inv_mod(a.back(), p);
    for (long& c : a) c = (c * linv) % p;
  }
  return a;
}

long eval(const std::vector<long>& a, long x, long p) {
  long acc = 0;
  for (long i = static_cast<long>(a.size()) - 1; i >= 0; --i)
    acc = (acc * x + a[i]) % p;
  return acc;
}

}  // namespace fp

bool mod_p_squarefree(const PadicPoly& f) {
  if (f.is_zero()) fail(ErrorCode::BadArguments, "squarefree check of zero");
  long p = f.prime();
  std::vector<long> fbar = f.mod_p();
  if (static_cast<long>(fbar.size()) - 1 != f.degree())
    fail(ErrorCode::NotAUnit, "leading coefficient is not a unit");
  std::vector<long> g = fp::gcd(fbar, fp::derivative(fbar, p), p);
  return g.size() == 1;
}

}  // namespace coleman
