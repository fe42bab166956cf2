#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coleman/padic.hpp"

using namespace coleman;

namespace {

// Exhaustive modular inverse, the independent oracle for division values.
long inverse_by_search(long a, long mod) {
  a = ((a % mod) + mod) % mod;
  for (long t = 1; t < mod; ++t)
    if (a * t % mod == 1) return t;
  return -1;
}

Padic random_padic(std::mt19937_64& rng, long p, long max_abs = 12) {
  std::uniform_int_distribution<long> val(-3, 4);
  std::uniform_int_distribution<long> prec(3, max_abs);
  long v = val(rng);
  long abs = v + prec(rng);
  std::uniform_int_distribution<long> unit(1, 1 << 20);
  long u = unit(rng);
  while (u % p == 0) ++u;
  return Padic::from_residue(mpz_class(u), v, p, abs - v);
}

}  // namespace

TEST_CASE("from_rational basics") {
  // 16 = 5 mod 11 and 5 * 9 = 45 = 1 mod 11, so 1/16 = 9 + O(11).
  CHECK(inverse_by_search(16, 11) == 9);
  Padic x = Padic::from_rational(mpz_class(1), mpz_class(16), 11, 1);
  CHECK(x.valuation() == 0);
  CHECK(x.unit() == 9);
  CHECK(x.str() == "9 + O(11)");

  Padic z = Padic::from_rational(mpz_class(0), mpz_class(5), 7, 4);
  CHECK(z.is_zero());
  CHECK(z.str() == "O(7^4)");

  // 7/2 at p=7: valuation 1, unit = 1/2 = 4 (mod 7).
  CHECK(inverse_by_search(2, 7) == 4);
  Padic h = Padic::from_rational(mpz_class(7), mpz_class(2), 7, 3);
  CHECK(h.valuation() == 1);
  CHECK(h.residue() == 0);
  CHECK(h.unit() % 7 == 4);

  CHECK_THROWS_AS(Padic::from_rational(mpz_class(1), mpz_class(0), 7, 3),
                  ColemanError);
}

TEST_CASE("arithmetic and precision propagation") {
  Padic one7 = Padic::from_mpz(mpz_class(1), 7, 3);
  CHECK((one7 * one7).abs_prec() == 3);
  CHECK((one7 * one7).str() == "1 + O(7^3)");

  std::mt19937_64 rng(42);
  for (int i = 0; i < 50; ++i) {
    Padic x = random_padic(rng, 7);
    Padic s = x + (-x);
    CHECK(s.is_zero());
    CHECK(s.abs_prec() == x.abs_prec());
  }

  // 1/3 at p=7 to 2 digits: exhaustive search gives 3*33 = 99 = 1 mod 49.
  CHECK(inverse_by_search(3, 49) == 33);
  Padic t = Padic::from_integer(1, 7, 2) / Padic::from_integer(3, 7, 2);
  CHECK(t.unit() == 33);
  CHECK(t.str() == "5 + 4*7 + O(7^2)");

  CHECK_THROWS_AS(Padic::from_integer(1, 7, 3) / Padic::zero(7, 5), ColemanError);
  CHECK_THROWS_AS(Padic::from_integer(1, 7, 3) + Padic::from_integer(1, 11, 3),
                  ColemanError);
}

TEST_CASE("field axioms at shared precision") {
  std::mt19937_64 rng(7);
  for (long p : {3L, 7L, 11L, 13L}) {
    for (int i = 0; i < 40; ++i) {
      Padic a = random_padic(rng, p);
      Padic b = random_padic(rng, p);
      Padic c = random_padic(rng, p);
      CHECK(((a + b) + c) == (a + (b + c)));
      CHECK((a * (b + c)) == (a * b + a * c));
      CHECK((a * b) == (b * a));
      if (!b.is_zero()) CHECK(((a / b) * b) == a);
    }
  }
}

TEST_CASE("sqrt_unit") {
  Padic one = Padic::from_integer(1, 7, 6);
  CHECK(one.sqrt_unit(1) == one);

  // 10^2 = 100 = 2 (mod 49): sqrt(2) with seed 3 is 3 + 1*7 + O(7^2).
  Padic two = Padic::from_integer(2, 7, 2);
  Padic r = two.sqrt_unit(3);
  CHECK(r.unit() == 10);
  CHECK(r.str() == "3 + 7 + O(7^2)");
  Padic rneg = two.sqrt_unit(4);
  CHECK(rneg == -r);

  CHECK_THROWS_AS(Padic::from_integer(3, 7, 4).sqrt_unit(1), ColemanError);
  CHECK_THROWS_AS(Padic::from_integer(3, 7, 4).sqrt_unit(2), ColemanError);

  std::mt19937_64 rng(11);
  for (long p : {3L, 7L, 11L, 13L}) {
    int done = 0;
    while (done < 100) {
      Padic a = random_padic(rng, p);
      if (a.is_zero() || a.valuation() != 0) continue;
      long r0 = -1;
      long a0 = a.residue();
      for (long s = 1; s < p; ++s)
        if (s * s % p == a0) {
          r0 = s;
          break;
        }
      if (r0 < 0) continue;
      Padic root = a.sqrt_unit(r0);
      CHECK((root * root - a).is_zero());
      CHECK((root * root - a).abs_prec() >= a.abs_prec());
      ++done;
    }
  }
}

TEST_CASE("teichmuller lift") {
  Padic one = Padic::from_integer(1, 7, 8);
  CHECK(one.teichmuller() == one);

  // Fixed point of t -> t^7 mod 343 over the residue 3 is 325.
  Padic t = Padic::from_integer(3, 7, 3).teichmuller();
  CHECK(t.unit() == 325);
  CHECK(t.str() == "3 + 4*7 + 6*7^2 + O(7^3)");

  for (long p : {3L, 7L, 11L, 13L}) {
    Padic m = Padic::from_integer(p - 1, p, 6).teichmuller();
    CHECK((m + Padic::from_integer(1, p, 6)).is_zero());
  }

  std::mt19937_64 rng(13);
  for (long p : {3L, 7L, 11L, 13L}) {
    int done = 0;
    while (done < 30) {
      Padic a = random_padic(rng, p);
      if (a.is_zero() || a.valuation() != 0) continue;
      Padic t2 = a.teichmuller();
      CHECK((t2.pow(p) - t2).is_zero());
      CHECK(t2.residue() == a.residue());
      ++done;
    }
  }

  CHECK_THROWS_AS(Padic::from_integer(7, 7, 4).teichmuller(), ColemanError);
}

TEST_CASE("rendering") {
  CHECK(Padic::zero(11, 6).str() == "O(11^6)");
  // 7*11 + 6*11^2 + 3*11^3 + 11^4 + 5*11^5
  mpz_class v = 7 * 11 + 6 * 121 + 3 * 1331 + 14641 + 5 * 161051;
  Padic x = Padic::from_mpz(v, 11, 6);
  CHECK(x.str() == "7*11 + 6*11^2 + 3*11^3 + 11^4 + 5*11^5 + O(11^6)");
  CHECK(Padic::from_rational(mpz_class(10), mpz_class(1), 7, 2).str() ==
        "3 + 7 + O(7^2)");
}

TEST_CASE("render/parse round trip") {
  std::mt19937_64 rng(99);
  for (long p : {3L, 7L, 11L}) {
    for (int i = 0; i < 60; ++i) {
      Padic x = random_padic(rng, p);
      Padic y = Padic::parse(x.str(), p);
      CHECK(y.abs_prec() == x.abs_prec());
      CHECK(y == x);
      if (!x.is_zero()) {
        CHECK(y.valuation() == x.valuation());
        CHECK(y.unit() == x.unit());
      }
    }
  }
  Padic q = Padic::parse("-3/4", 11, 6);
  CHECK(q == Padic::from_rational(mpz_class(-3), mpz_class(4), 11, 6));
  CHECK_THROWS_AS(Padic::parse("2 + 3*5", 5, -1), ColemanError);
  CHECK_THROWS_AS(Padic::parse("9*7 + O(7^3)", 7), ColemanError);
}
