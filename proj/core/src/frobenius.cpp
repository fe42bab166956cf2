#include "coleman/frobenius.hpp"

#include <algorithm>
#include <map>

namespace coleman {

namespace {

// Dense polynomial with coefficients in Z/p^K. All reduction arithmetic runs
// at a fixed modulus; values carry a global scale p^(-ell) so that the small
// denominators introduced by the reduction stay representable (Kedlaya's
// lemmas bound them). Divisions by p-divisible integers are checked exact
// integer divisions.
using ZPoly = std::vector<mpz_class>;

struct Ring {
  long p = 0;
  long K = 0;
  mpz_class pK;

  void reduce(mpz_class& a) const {
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), pK.get_mpz_t());
  }

  void trim(ZPoly& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  void add_into(ZPoly& a, const ZPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), mpz_class(0));
    for (size_t i = 0; i < b.size(); ++i) {
      a[i] += b[i];
      reduce(a[i]);
    }
    trim(a);
  }

  ZPoly mul(const ZPoly& a, const ZPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    for (mpz_class& x : c) reduce(x);
    trim(c);
    return c;
  }

  ZPoly scale(const ZPoly& a, const mpz_class& s) const {
    ZPoly c = a;
    for (mpz_class& x : c) {
      x *= s;
      reduce(x);
    }
    trim(c);
    return c;
  }

  ZPoly derivative(const ZPoly& a) const {
    if (a.size() <= 1) return {};
    ZPoly d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) {
      d[i - 1] = a[i] * static_cast<long>(i);
      reduce(d[i - 1]);
    }
    trim(d);
    return d;
  }

  // Division by a monic divisor; returns quotient, a becomes the remainder.
  ZPoly divrem_monic(ZPoly& a, const ZPoly& monic) const {
    trim(a);
    if (a.size() < monic.size()) return {};
    ZPoly q(a.size() - monic.size() + 1, mpz_class(0));
    for (long i = static_cast<long>(a.size()) - 1;
         i >= static_cast<long>(monic.size()) - 1; --i) {
      mpz_class c = a[i];
      reduce(c);
      if (c == 0) {
        a[i] = 0;
        continue;
      }
      long shift = i - (static_cast<long>(monic.size()) - 1);
      q[shift] = c;
      for (size_t j = 0; j < monic.size(); ++j) {
        a[shift + j] -= c * monic[j];
        reduce(a[shift + j]);
      }
    }
    trim(a);
    trim(q);
    return q;
  }

  mpz_class inv(const mpz_class& a) const {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), pK.get_mpz_t()) == 0)
      fail(ErrorCode::InsufficientPrecision, "non-invertible element mod p^K");
    return r;
  }

  // Exact division of every coefficient by the integer d = p^v * u.
  ZPoly div_exact_int(const ZPoly& a, long d) const {
    mpz_class dd = d;
    long v = 0;
    mpz_class u = dd < 0 ? -dd : dd;
    u = remove_p(u, p, v);
    if (dd < 0) u = -u;
    mpz_class pv = pow_p(p, v);
    mpz_class uinv = inv(u);
    ZPoly c = a;
    for (mpz_class& x : c) {
      if (v > 0) {
        if (!mpz_divisible_p(x.get_mpz_t(), pv.get_mpz_t()))
          fail(ErrorCode::InsufficientPrecision,
               "reduction denominator exceeded the guard digits; raise N");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
      }
      x *= uinv;
      reduce(x);
    }
    trim(c);
    return c;
  }
};

// Extended Euclid over F_p[x]: returns (u, v) with u*a + v*b = 1; requires
// gcd(a, b) = 1.
std::pair<std::vector<long>, std::vector<long>> fp_bezout(
    std::vector<long> a, std::vector<long> b, long p) {
  auto inv_mod = [p](long x) {
    long t = 0, nt = 1, r = p, nr = ((x % p) + p) % p;
    while (nr != 0) {
      long q = r / nr;
      std::swap(t -= q * nt, nt);
      std::swap(r -= q * nr, nr);
    }
    return ((t % p) + p) % p;
  };
  using FpPoly = std::vector<long>;
  auto trim = [](FpPoly v) { return fp::trim(std::move(v)); };
  auto sub_scaled = [p](FpPoly x, const FpPoly& y, long c, long shift) {
    if (x.size() < y.size() + shift) x.resize(y.size() + shift, 0);
    for (size_t i = 0; i < y.size(); ++i)
      x[i + shift] = ((x[i + shift] - c * y[i]) % p + p) % p;
    return fp::trim(std::move(x));
  };
  a = trim(std::move(a));
  b = trim(std::move(b));
  FpPoly r0 = a, r1 = b;
  FpPoly u0 = {1}, u1 = {};
  FpPoly v0 = {}, v1 = {1};
  while (!r1.empty()) {
    long linv = inv_mod(r1.back());
    // One division step at a time keeps the bookkeeping simple.
    if (r0.size() < r1.size()) {
      std::swap(r0, r1);
      std::swap(u0, u1);
      std::swap(v0, v1);
      continue;
    }
    long q = (r0.back() * linv) % p;
    long shift = r0.size() - r1.size();
    r0 = sub_scaled(std::move(r0), r1, q, shift);
    // u0 -= q x^shift u1 ; v0 -= q x^shift v1
    u0 = sub_scaled(std::move(u0), u1, q, shift);
    v0 = sub_scaled(std::move(v0), v1, q, shift);
    if (r0.size() < r1.size() || r0.empty()) {
      std::swap(r0, r1);
      std::swap(u0, u1);
      std::swap(v0, v1);
    }
  }
  if (r0.size() != 1)
    fail(ErrorCode::BadReduction, "f and f' are not coprime modulo p");
  long linv = inv_mod(r0[0]);
  for (long& c : u0) c = (c * linv) % p;
  for (long& c : v0) c = (c * linv) % p;
  return {u0, v0};
}

struct Reduced {
  ZPoly basis_coeffs;              // degree <= 2g-1
  std::map<long, ZPoly> exact;     // j (odd) -> B_j with f = sum B_j y^(-j)
};

class ReductionEngine {
 public:
  ReductionEngine(const HyperellipticCurve& curve, long base_prec, long s_max,
                  long deg0_max, long extra_neg_val)
      : p_(curve.prime()), g_(curve.genus()), N_(base_prec) {
    // Scale covering the worst-case denominators of the reduction.
    long div_bound = std::max(2 * s_max + 1, 2 * deg0_max + 2 * g_ + 1);
    scale_ = 2 + floor_log(p_, std::max<long>(div_bound, 1)) + extra_neg_val;
    // Modulus: base digits + scale + every digit that checked p-divisions
    // can consume along a dependency chain, plus slack.
    long v_total = 0;
    for (long s = 1; s <= s_max; ++s) v_total += vp_long(2 * s - 1);
    for (long i = 0; i <= deg0_max; ++i) v_total += vp_long(2 * i + 2 * g_ + 1);
    ring_.p = p_;
    ring_.K = N_ + scale_ + v_total + 6;
    ring_.pK = pow_p(p_, ring_.K);

    // The relation polynomials stay at scale 1; only form coefficients carry
    // the global scale.
    f_ = encode_poly_unscaled(curve.f());
    fp_ = ring_.derivative(f_);
    compute_bezout(curve);
  }

  long scale() const { return scale_; }
  const Ring& ring() const { return ring_; }
  const ZPoly& f() const { return f_; }

  ZPoly encode_poly(const PadicPoly& a) const {
    ZPoly out(a.degree() + 1, mpz_class(0));
    for (long i = 0; i <= a.degree(); ++i) out[i] = encode(a.coeff(i));
    ring_.trim(out);
    return out;
  }

  // Residues at scale 1 (integral coefficients only).
  ZPoly encode_poly_unscaled(const PadicPoly& a) const {
    ZPoly out(a.degree() + 1, mpz_class(0));
    for (long i = 0; i <= a.degree(); ++i) {
      Padic c = a.coeff(i);
      if (c.is_zero()) continue;
      out[i] = c.unit() * pow_p(p_, c.valuation());
      ring_.reduce(out[i]);
    }
    ring_.trim(out);
    return out;
  }

  mpz_class encode(const Padic& c) const {
    if (c.is_zero()) return 0;
    if (c.valuation() + scale_ < 0)
      fail(ErrorCode::BadArguments, "coefficient valuation below the scale");
    mpz_class r = c.unit() * pow_p(p_, c.valuation() + scale_);
    ring_.reduce(r);
    return r;
  }

  Padic decode(const mpz_class& r, long cert) const {
    return Padic::from_residue(r, -scale_, p_, cert + scale_);
  }

  PadicPoly decode_poly(const ZPoly& a, long cert) const {
    std::vector<Padic> c;
    c.reserve(a.size());
    for (const mpz_class& x : a) c.push_back(decode(x, cert));
    return PadicPoly(p_, std::move(c));
  }

  // Core reduction: input strata A[s] represent (A_s(x) y^(-2s)) dx/(2y).
  Reduced reduce(std::map<long, ZPoly> strata) const {
    Reduced out;
    // Positive powers of y: y^2 = f(x), one level at a time.
    while (!strata.empty() && strata.begin()->first < 0) {
      auto it = strata.begin();
      long s = it->first;
      ZPoly lifted = ring_.mul(it->second, f_);
      strata.erase(it);
      ring_.add_into(strata[s + 1], lifted);
    }
    // Pole telescoping from the top stratum down to the basis level.
    while (!strata.empty() && strata.rbegin()->first > 0) {
      auto it = std::prev(strata.end());
      long s = it->first;
      ZPoly R = std::move(it->second);
      strata.erase(it);
      ring_.trim(R);
      if (R.empty()) continue;
      if (static_cast<long>(R.size()) - 1 > 2 * g_) {
        ZPoly q = ring_.divrem_monic(R, f_);
        ring_.add_into(strata[s - 1], q);
      }
      if (R.empty()) continue;
      // R = U f + V f' with deg V <= 2g.
      ZPoly V = ring_.mul(R, binv_);
      ring_.divrem_monic(V, f_);
      ZPoly T = R;
      ZPoly vfp = ring_.mul(V, fp_);
      for (size_t i = 0; i < vfp.size(); ++i) {
        if (T.size() <= i) T.resize(i + 1, mpz_class(0));
        T[i] -= vfp[i];
        ring_.reduce(T[i]);
      }
      ZPoly U = ring_.divrem_monic(T, f_);
      ring_.trim(T);
      if (!T.empty())
        fail(ErrorCode::InsufficientPrecision, "Bezout split left a remainder");
      long d = 2 * s - 1;
      ZPoly carry = ring_.div_exact_int(ring_.scale(ring_.derivative(V), 2), d);
      ring_.add_into(strata[s - 1], U);
      ring_.add_into(strata[s - 1], carry);
      ZPoly exact_term = ring_.div_exact_int(ring_.scale(V, -1), d);
      ring_.trim(exact_term);
      if (!exact_term.empty()) {
        ring_.add_into(out.exact[2 * s - 1], exact_term);
      }
    }
    // x-degree reduction in the basis stratum via d(x^i y).
    ZPoly W;
    if (!strata.empty()) W = std::move(strata.begin()->second);
    ring_.trim(W);
    while (static_cast<long>(W.size()) - 1 >= 2 * g_) {
      long D = static_cast<long>(W.size()) - 1;
      long i = D - 2 * g_;
      long d = 2 * i + 2 * g_ + 1;
      ZPoly lead{W.back()};
      ZPoly c = ring_.div_exact_int(lead, d);
      if (!c.empty()) {
        // W -= c * (2 i x^(i-1) f + x^i f')
        ZPoly sub(i + 1, mpz_class(0));
        sub[i] = c[0];
        ZPoly term = ring_.mul(sub, fp_);
        if (i > 0) {
          ZPoly sub2(i, mpz_class(0));
          sub2[i - 1] = c[0] * (2 * i);
          ring_.reduce(sub2[i - 1]);
          ring_.add_into(term, ring_.mul(sub2, f_));
        }
        for (size_t k = 0; k < term.size(); ++k) {
          if (W.size() <= k) W.resize(k + 1, mpz_class(0));
          W[k] -= term[k];
          ring_.reduce(W[k]);
        }
        ring_.add_into(out.exact[-1], sub);
      }
      ring_.trim(W);
      if (static_cast<long>(W.size()) - 1 == D)
        fail(ErrorCode::InsufficientPrecision, "x-degree reduction stalled");
    }
    W.resize(2 * g_, mpz_class(0));
    out.basis_coeffs = std::move(W);
    // Canonicalize the exact part into the A-dagger shape deg B_j <= 2g:
    // excess x-degree moves to the next lower stratum via y^2 = f.
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<long> keys;
      for (const auto& [j, B] : out.exact) keys.push_back(j);
      for (long j : keys) {
        ZPoly& B = out.exact[j];
        if (static_cast<long>(B.size()) - 1 > 2 * g_) {
          ZPoly q = ring_.divrem_monic(B, f_);
          ring_.add_into(out.exact[j - 2], q);
          changed = true;
        }
      }
    }
    return out;
  }

 private:
  long vp_long(long n) const {
    long v = 0;
    while (n != 0 && n % p_ == 0) {
      n /= p_;
      ++v;
    }
    return v;
  }

  void compute_bezout(const HyperellipticCurve& curve) {
    std::vector<long> fbar = curve.f().mod_p();
    std::vector<long> fpbar = fp::trim([&] {
      std::vector<long> d;
      for (size_t i = 1; i < fbar.size(); ++i)
        d.push_back((fbar[i] * (static_cast<long>(i) % p_)) % p_);
      return d;
    }());
    auto [u, v] = fp_bezout(fbar, fpbar, p_);
    (void)u;
    // Hensel-lift v (the inverse of f' modulo f) from mod p to mod p^K.
    ZPoly b(v.size());
    for (size_t i = 0; i < v.size(); ++i) b[i] = v[i];
    long known = 1;
    while (known < ring_.K) {
      // b <- b (2 - f' b) mod f
      ZPoly t = ring_.mul(fp_, b);
      ring_.divrem_monic(t, f_);
      ZPoly corr(std::max(t.size(), size_t(1)), mpz_class(0));
      corr[0] = 2;
      for (size_t i = 0; i < t.size(); ++i) {
        corr[i] -= t[i];
        ring_.reduce(corr[i]);
      }
      ring_.trim(corr);
      b = ring_.mul(b, corr);
      ring_.divrem_monic(b, f_);
      known *= 2;
    }
    binv_ = b;
  }

  long p_, g_, N_;
  long scale_ = 0;
  Ring ring_;
  ZPoly f_, fp_, binv_;
};

}  // namespace

PadicPoly char_poly(const PadicMatrix& M) { return M.char_poly(); }

DaggerForm frobenius_inverse_y(const HyperellipticCurve& curve) {
  long p = curve.prime();
  long N = curve.working_prec();
  long g = curve.genus();
  long n_ked = 1 + floor_log(p, std::max(N, 2 * g + 1));
  long cert = N - n_ked;
  // Work at a plain fixed modulus; no reduction happens here, so no scale.
  Ring ring;
  ring.p = p;
  ring.K = N + 2;
  ring.pK = pow_p(p, ring.K);

  // D(x) = f(x^p) - f(x)^p, divisible by p.
  ZPoly fz(curve.f().degree() + 1);
  for (long i = 0; i <= curve.f().degree(); ++i) {
    Padic c = curve.f().coeff(i);
    fz[i] = c.is_zero() ? mpz_class(0)
                        : c.unit() * pow_p(p, c.valuation());
    ring.reduce(fz[i]);
  }
  ZPoly fxp((curve.f().degree()) * p + 1, mpz_class(0));
  for (long i = 0; i <= curve.f().degree(); ++i) fxp[i * p] = fz[i];
  ZPoly fpow{mpz_class(1)};
  for (long e = 0; e < p; ++e) fpow = ring.mul(fpow, fz);
  ZPoly D = fxp;
  for (size_t i = 0; i < fpow.size(); ++i) {
    if (D.size() <= i) D.resize(i + 1, mpz_class(0));
    D[i] -= fpow[i];
    ring.reduce(D[i]);
  }
  ring.trim(D);
  for (const mpz_class& c : D)
    if (c != 0 && !mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(p)))
      fail(ErrorCode::InsufficientPrecision, "Frobenius congruence violated");

  DaggerForm out = DaggerForm::function(p);
  ZPoly Dk{mpz_class(1)};
  for (long k = 0; k < N; ++k) {
    if (k > 0) Dk = ring.mul(Dk, D);
    // binom(-1/2, k) = (-1)^k C(2k, k) / 4^k
    mpz_class num;
    mpz_bin_uiui(num.get_mpz_t(), static_cast<unsigned long>(2 * k),
                 static_cast<unsigned long>(k));
    if (k % 2 == 1) num = -num;
    mpz_class den = pow_p(2, 2 * k);  // 4^k
    mpz_class deninv;
    mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), ring.pK.get_mpz_t());
    ZPoly term = ring.scale(Dk, num * deninv % ring.pK);
    std::vector<Padic> coeffs;
    coeffs.reserve(term.size());
    for (const mpz_class& c : term)
      coeffs.push_back(Padic::from_residue(c, 0, p, cert));
    out.add_term(2 * p * k + p - 1, PadicPoly(p, std::move(coeffs)));
  }
  return out;
}

ReducedForm reduce_form(const DaggerForm& omega,
                        const HyperellipticCurve& curve) {
  if (omega.role() != DaggerForm::Role::OddOneForm)
    fail(ErrorCode::BadArguments, "reduce_form expects an odd 1-form");
  if (!omega.all_exponents_even())
    fail(ErrorCode::EvenForm, "only odd forms (even y-exponents) reduce");
  long p = curve.prime();
  long g = curve.genus();
  long N = curve.working_prec();
  long base = N;
  long min_val = 0;
  for (const auto& [j, B] : omega.terms())
    for (const Padic& c : B.coeffs())
      if (!c.is_zero()) {
        base = std::min(base, c.abs_prec());
        min_val = std::min(min_val, c.valuation());
      }
  long s_max = std::max<long>(omega.max_y_exponent() / 2, 1);
  long deg0 = 2 * g;
  for (const auto& [j, B] : omega.terms()) {
    long extra = j < 0 ? (-j / 2) * (2 * g + 1) : 0;
    deg0 = std::max(deg0, B.degree() + extra);
  }
  ReductionEngine engine(curve, base, s_max, deg0, -min_val);
  std::map<long, ZPoly> strata;
  for (const auto& [j, B] : omega.terms())
    engine.ring().add_into(strata[j / 2], engine.encode_poly(B));
  Reduced red = engine.reduce(std::move(strata));

  long n_ked = 1 + floor_log(p, std::max(base, 2 * g + 1));
  ReducedForm out{DaggerForm::function(p), {}, base - n_ked};
  for (const auto& [j, B] : red.exact)
    out.exact_part.add_term(j, engine.decode_poly(B, out.certified_prec));
  for (long i = 0; i < 2 * g; ++i)
    out.coeffs.push_back(engine.decode(red.basis_coeffs[i], out.certified_prec));
  return out;
}

FrobeniusData frobenius_action(const HyperellipticCurve& curve) {
  long p = curve.prime();
  long g = curve.genus();
  long N = curve.working_prec();
  long n_ked = 1 + floor_log(p, std::max(N, 2 * g + 1));
  long cert = N - n_ked;

  long s_max = p * (N - 1) + (p - 1) / 2 + 1;
  long deg0 = std::max(2 * g * p + 2 * g + 1, 4 * g + 2);
  ReductionEngine engine(curve, N, s_max, deg0, 0);
  const Ring& ring = engine.ring();

  // D(x) = f(x^p) - f(x)^p at the engine's modulus (scale included once in
  // the p * binom factor below, applied per term).
  ZPoly fz = engine.encode_poly_unscaled(curve.f());
  ZPoly fxp((curve.f().degree()) * p + 1, mpz_class(0));
  for (size_t i = 0; i < fz.size(); ++i) fxp[i * p] = fz[i];
  ZPoly fpow{mpz_class(1)};
  for (long e = 0; e < p; ++e) fpow = ring.mul(fpow, fz);
  ZPoly D = fxp;
  for (size_t i = 0; i < fpow.size(); ++i) {
    if (D.size() <= i) D.resize(i + 1, mpz_class(0));
    D[i] -= fpow[i];
    ring.reduce(D[i]);
  }
  ring.trim(D);

  // Scaled strata factors: scale * p * binom(-1/2, k) * D^k.
  std::vector<ZPoly> stratum_factor;
  ZPoly Dk{mpz_class(1)};
  mpz_class scale_factor = pow_p(p, engine.scale());
  for (long k = 0; k < N; ++k) {
    if (k > 0) Dk = ring.mul(Dk, D);
    mpz_class num;
    mpz_bin_uiui(num.get_mpz_t(), static_cast<unsigned long>(2 * k),
                 static_cast<unsigned long>(k));
    if (k % 2 == 1) num = -num;
    mpz_class den = pow_p(2, 2 * k);
    mpz_class deninv;
    mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), ring.pK.get_mpz_t());
    mpz_class c = num * deninv % ring.pK * p % ring.pK * scale_factor % ring.pK;
    stratum_factor.push_back(ring.scale(Dk, c));
  }

  FrobeniusData fd{PadicMatrix(p, 2 * g, 2 * g), {}, cert};
  for (long i = 0; i < 2 * g; ++i) {
    std::map<long, ZPoly> strata;
    long shift = p * i + p - 1;
    for (long k = 0; k < N; ++k) {
      long s = p * k + (p - 1) / 2;
      ZPoly term(stratum_factor[k].size() + shift, mpz_class(0));
      for (size_t t = 0; t < stratum_factor[k].size(); ++t)
        term[t + shift] = stratum_factor[k][t];
      ring.add_into(strata[s], term);
    }
    Reduced red = engine.reduce(std::move(strata));
    for (long j = 0; j < 2 * g; ++j)
      fd.M.at(i, j) = engine.decode(red.basis_coeffs[j], cert);
    DaggerForm fi = DaggerForm::function(p);
    for (const auto& [j, B] : red.exact)
      fi.add_term(j, engine.decode_poly(B, cert));
    fd.exact_parts.push_back(std::move(fi));
  }
  return fd;
}

}  // namespace coleman
