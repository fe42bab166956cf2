#pragma once

#include <random>
#include <vector>

#include "coleman/integrate.hpp"

namespace fixtures {

using namespace coleman;

// Genus 2 over Q_11: y^2 = x^5 + 33/16 x^4 + 3/4 x^3 + 3/8 x^2 - 1/4 x + 1/16.
inline HyperellipticCurve leprevost(long digits = 6) {
  std::vector<mpq_class> f = {mpq_class("1/16"), mpq_class("-1/4"),
                              mpq_class("3/8"),  mpq_class("3/4"),
                              mpq_class("33/16"), mpq_class(1)};
  for (auto& q : f) q.canonicalize();
  return HyperellipticCurve::create(f, 11, digits);
}

// Genus 2 over Q_7: y^2 = x(x-1)(x-2)(x-5)(x-6).
inline HyperellipticCurve rank_one(long digits = 6) {
  std::vector<mpq_class> f = {mpq_class(0),  mpq_class(60), mpq_class(-112),
                              mpq_class(65), mpq_class(-14), mpq_class(1)};
  return HyperellipticCurve::create(f, 7, digits);
}

// Genus 1: y^2 = x^3 + a x + b.
inline HyperellipticCurve elliptic(long a, long b, long p, long digits = 6) {
  std::vector<mpq_class> f = {mpq_class(b), mpq_class(a), mpq_class(0),
                              mpq_class(1)};
  return HyperellipticCurve::create(f, p, digits);
}

inline std::vector<long> fbar_of(const HyperellipticCurve& c) {
  return c.f().mod_p();
}

// A random affine non-Weierstrass point, optionally pinned to a residue disc.
inline CurvePoint random_point(const HyperellipticCurve& c,
                               std::mt19937_64& rng) {
  long p = c.prime();
  std::uniform_int_distribution<long> xres(0, p - 1);
  std::uniform_int_distribution<long> depth(0, 2);
  std::uniform_int_distribution<long> digit(0, p - 1);
  for (;;) {
    long x0 = xres(rng);
    long lift = x0;
    long scale = p;
    for (long k = 0; k < depth(rng); ++k) {
      lift += digit(rng) * scale;
      scale *= p;
    }
    Padic x = Padic::from_integer(lift, p, c.working_prec());
    Padic fx = c.f_at(x);
    if (fx.is_zero() || fx.valuation() != 0) continue;
    long r0 = fx.residue();
    long seed = -1;
    for (long s = 1; s < p; ++s)
      if (s * s % p == r0) {
        seed = s;
        break;
      }
    if (seed < 0) continue;
    std::uniform_int_distribution<int> flip(0, 1);
    if (flip(rng)) seed = p - seed;
    return c.lift_point(x, seed);
  }
}

// A random point in the same residue disc as P (same square-root branch).
inline CurvePoint random_point_same_disc(const HyperellipticCurve& c,
                                         const CurvePoint& P,
                                         std::mt19937_64& rng) {
  long p = c.prime();
  std::uniform_int_distribution<long> digit(0, p - 1);
  DiscDescriptor d = c.classify_disc(P);
  for (;;) {
    mpz_class lift = d.x_residue;
    mpz_class scale = p;
    for (int k = 0; k < 3; ++k) {
      lift += digit(rng) * scale;
      scale *= p;
    }
    Padic x = Padic::from_mpz(lift, p, c.working_prec());
    Padic fx = c.f_at(x);
    if (fx.is_zero() || fx.valuation() != 0) continue;
    return c.lift_point(x, d.y_residue);
  }
}

// Basis differential w_i = x^i dx/2y as a DaggerForm.
inline DaggerForm basis_form(const HyperellipticCurve& c, long i) {
  DaggerForm w = DaggerForm::odd_one_form(c.prime());
  std::vector<Padic> mono(i + 1, Padic::zero(c.prime(), kExactPrec));
  mono[i] = Padic::one(c.prime());
  w.add_term(0, PadicPoly(c.prime(), std::move(mono)));
  return w;
}

}  // namespace fixtures
