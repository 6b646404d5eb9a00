#pragma once

// Exact arithmetic in the real quadratic field Q(sqrt(D)).

#include <gmpxx.h>

#include <string>
#include <utility>

namespace hypcrystal {

using BigInt = mpz_class;

/// An element (a + b*sqrt(D)) / den of Q(sqrt(D)), always kept in canonical
/// form: den > 0 and gcd(a, b, den) = 1.  D is carried by every value and
/// binary operations refuse to mix values with different D.
class QuadNum {
 public:
  /// Throws std::invalid_argument when den == 0, D <= 0 or D is a perfect
  /// square.
  QuadNum(BigInt a, BigInt b, BigInt den, BigInt D);

  static QuadNum zero(const BigInt& D);
  static QuadNum integer(const BigInt& n, const BigInt& D);
  static QuadNum rational(const BigInt& num, const BigInt& den, const BigInt& D);

  /// Parses the textual form produced by to_string(), e.g. "(9+1√45)/6".
  static QuadNum parse(const std::string& text);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& den() const { return den_; }
  const BigInt& disc() const { return D_; }

  int sign() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QuadNum operator-() const;
  QuadNum conjugate() const;
  /// Throws std::domain_error on zero.
  QuadNum inverse() const;

  QuadNum& operator+=(const QuadNum& y);
  QuadNum& operator-=(const QuadNum& y);
  QuadNum& operator*=(const QuadNum& y);
  QuadNum& operator/=(const QuadNum& y);

  friend QuadNum operator+(QuadNum x, const QuadNum& y) { return x += y; }
  friend QuadNum operator-(QuadNum x, const QuadNum& y) { return x -= y; }
  friend QuadNum operator*(QuadNum x, const QuadNum& y) { return x *= y; }
  friend QuadNum operator/(QuadNum x, const QuadNum& y) { return x /= y; }

  /// Structural equality; equals mathematical equality because of the
  /// canonical form.
  friend bool operator==(const QuadNum& x, const QuadNum& y) {
    return x.D_ == y.D_ && x.a_ == y.a_ && x.b_ == y.b_ && x.den_ == y.den_;
  }

  /// sign(x - y).
  int compare(const QuadNum& y) const;

  std::string to_string() const;

  /// Floating approximation, for diagnostics only.
  double approx() const;

 private:
  struct Trusted {};
  QuadNum(BigInt a, BigInt b, BigInt den, BigInt D, Trusted);
  void canonicalize();
  void require_same_field(const QuadNum& y) const;

  BigInt a_;
  BigInt b_;
  BigInt den_;
  BigInt D_;
};

enum class ArithOp { Add, Sub, Mul, Div };

QuadNum qnum_arith(const QuadNum& x, const QuadNum& y, ArithOp op);

/// Exact sign of (a + b*sqrt(D)) / den; no floating point involved.
int qnum_sign(const QuadNum& x);

/// alpha = (a1 a2 + sqrt(D)) / (2 a2), beta = (a1 a2 + sqrt(D)) / (2 a1)
/// with D = a1^2 a2^2 - 4 a1 a2.  Throws std::invalid_argument unless
/// a1, a2 >= 1 and a1 a2 > 4.
std::pair<QuadNum, QuadNum> make_alpha_beta(long a1, long a2);

BigInt hyperbolic_discriminant(long a1, long a2);

}  // namespace hypcrystal
