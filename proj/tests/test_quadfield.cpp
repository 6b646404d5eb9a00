#include <doctest.h>
#include <mpfr.h>

#include <random>

#include "hypcrystal/quadfield.hpp"

using namespace hypcrystal;

namespace {

QuadNum q(long a, long b, long den, long D) { return QuadNum(a, b, den, D); }

// Sign of (a + b sqrt D)/den from a 128-bit outward-rounded interval, or 0
// when the interval straddles zero.
int interval_sign(const QuadNum& x) {
  mpfr_t lo, hi, t, d;
  mpfr_inits2(128, lo, hi, t, d, (mpfr_ptr)0);
  mpfr_set_z(d, x.disc().get_mpz_t(), MPFR_RNDN);  // D is small and exact
  mpfr_t slo, shi;
  mpfr_inits2(128, slo, shi, (mpfr_ptr)0);
  mpfr_sqrt(slo, d, MPFR_RNDD);
  mpfr_sqrt(shi, d, MPFR_RNDU);
  mpfr_set_z(t, x.b().get_mpz_t(), MPFR_RNDN);
  if (sgn(x.b()) >= 0) {
    mpfr_mul(lo, t, slo, MPFR_RNDD);
    mpfr_mul(hi, t, shi, MPFR_RNDU);
  } else {
    mpfr_mul(lo, t, shi, MPFR_RNDD);
    mpfr_mul(hi, t, slo, MPFR_RNDU);
  }
  mpfr_add_z(lo, lo, x.a().get_mpz_t(), MPFR_RNDD);
  mpfr_add_z(hi, hi, x.a().get_mpz_t(), MPFR_RNDU);
  int s = 0;
  if (mpfr_sgn(lo) > 0) s = 1;
  if (mpfr_sgn(hi) < 0) s = -1;
  mpfr_clears(lo, hi, t, d, slo, shi, (mpfr_ptr)0);
  return s;
}

}  // namespace

TEST_CASE("additive identity and norm of alpha") {
  const QuadNum x = q(-7, 3, 5, 45);
  CHECK(q(0, 0, 1, 45) + x == x);
  const QuadNum prod = q(9, 1, 6, 45) * q(9, -1, 6, 45);
  CHECK(prod == QuadNum::integer(1, 45));
  CHECK(prod.to_string() == "(1+0√45)/1");
}

TEST_CASE("1/gamma0 + gamma1 = a2 for (2,3)") {
  auto [alpha, beta] = make_alpha_beta(2, 3);
  const QuadNum r = alpha.inverse() + beta;
  CHECK(r == QuadNum::integer(3, 12));
  CHECK(r.to_string() == "(3+0√12)/1");
}

TEST_CASE("exact sign") {
  CHECK(qnum_sign(QuadNum::zero(45)) == 0);
  CHECK(qnum_sign(q(-3, 1, 6, 45)) == 1);
  CHECK(qnum_sign(q(9, -1, 6, 45)) == 1);
  CHECK(qnum_sign(q(3, -1, 6, 45)) == -1);
  CHECK(qnum_sign(q(-9, 1, 6, 45)) == -1);
  CHECK(qnum_sign(q(-1, -1, 2, 45)) == -1);
}

TEST_CASE("alpha and beta") {
  {
    auto [a, b] = make_alpha_beta(3, 3);
    CHECK(a.to_string() == "(9+1√45)/6");
    CHECK(a == b);
  }
  {
    auto [a, b] = make_alpha_beta(2, 3);
    CHECK(a.to_string() == "(6+1√12)/6");
    CHECK(b.to_string() == "(6+1√12)/4");
    CHECK(a.sign() == 1);
    CHECK(b.sign() == 1);
  }
  CHECK_THROWS_AS(make_alpha_beta(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_alpha_beta(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_alpha_beta(0, 9), std::invalid_argument);
}

TEST_CASE("gamma identity for k in [-20, 20]") {
  for (auto [a1, a2] : {std::pair{3, 3}, {2, 3}, {3, 2}, {5, 1}, {1, 5}, {4, 2}, {7, 1}}) {
    auto [alpha, beta] = make_alpha_beta(a1, a2);
    const BigInt D = alpha.disc();
    for (long k = -20; k <= 20; ++k) {
      const QuadNum& gk = (k & 1) ? beta : alpha;
      const QuadNum& gk1 = ((k + 1) & 1) ? beta : alpha;
      const long a = (k & 1) ? a1 : a2;
      CHECK((gk.inverse() + gk1 - QuadNum::integer(a, D)).is_zero());
    }
  }
}

TEST_CASE("canonical form") {
  const QuadNum x = q(6, 4, 8, 45);
  CHECK(x.a() == 3);
  CHECK(x.b() == 2);
  CHECK(x.den() == 4);
  CHECK(q(3, 2, -4, 45) == q(-3, -2, 4, 45));
  CHECK(QuadNum(x.a(), x.b(), x.den(), x.disc()) == x);
  CHECK(q(0, 0, 17, 45) == QuadNum::zero(45));
  CHECK(QuadNum::zero(45).den() == 1);
}

TEST_CASE("construction and operation errors") {
  CHECK_THROWS_AS(q(1, 1, 0, 45), std::invalid_argument);
  CHECK_THROWS_AS(q(1, 1, 1, 49), std::invalid_argument);
  CHECK_THROWS_AS(q(1, 1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(q(1, 1, 1, -5), std::invalid_argument);
  CHECK_THROWS_AS(q(1, 1, 2, 45) + q(1, 1, 2, 12), std::invalid_argument);
  CHECK_THROWS_AS(q(1, 1, 2, 45) / QuadNum::zero(45), std::domain_error);
  CHECK_THROWS_AS(qnum_arith(q(1, 0, 1, 45), QuadNum::zero(45), ArithOp::Div), std::domain_error);
}

TEST_CASE("text round trip") {
  for (const QuadNum& x : {q(9, 1, 6, 45), q(-3, -7, 2, 12), QuadNum::zero(45), q(0, -1, 1, 77)})
    CHECK(QuadNum::parse(x.to_string()) == x);
  CHECK_THROWS(QuadNum::parse("9+sqrt45"));
}

TEST_CASE("field laws, sign laws and interval cross-check on random values") {
  std::mt19937_64 rng(20261014);
  std::uniform_int_distribution<long> coef(-60, 60), den(1, 30);
  for (auto [a1, a2] : {std::pair{3, 3}, {2, 3}, {3, 2}, {5, 1}, {1, 5}, {4, 2}}) {
    const BigInt D = hyperbolic_discriminant(a1, a2);
    auto rnd = [&] { return QuadNum(coef(rng), coef(rng), den(rng), D); };
    int compared = 0;
    for (int n = 0; n < 100; ++n) {
      const QuadNum x = rnd(), y = rnd(), z = rnd();
      CHECK(x + y == y + x);
      CHECK(x * y == y * x);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(qnum_sign(x * y) == qnum_sign(x) * qnum_sign(y));
      CHECK(qnum_sign(x - y) == x.compare(y));
      CHECK(qnum_arith(x, y, ArithOp::Sub) == x - y);
      if (!y.is_zero()) CHECK((x / y) * y == x);
      const int iv = interval_sign(x);
      if (iv != 0) {
        ++compared;
        CHECK(iv == qnum_sign(x));
      }
    }
    CHECK(compared > 50);
  }
}

TEST_CASE("signs near zero need exact arithmetic") {
  // 161^2 - 45*24^2 = 1, so the conjugate of a power of this unit is a
  // positive number far below double resolution next to its parts.
  const BigInt D = 45;
  QuadNum u = QuadNum::integer(1, D);
  for (int n = 0; n < 12; ++n) u *= QuadNum(161, 24, 1, D);
  const QuadNum tiny = u.conjugate();
  CHECK(qnum_sign(tiny) == 1);
  CHECK(qnum_sign(-tiny) == -1);
  CHECK(tiny * u == QuadNum::integer(1, D));
  // 1/u lies strictly between 1/(4a) and 1/a
  CHECK(qnum_sign(tiny - QuadNum::rational(1, u.a(), D)) == -1);
  CHECK(qnum_sign(tiny - QuadNum::rational(1, BigInt(4) * u.a(), D)) == 1);
}
