#include "hypcrystal/quadfield.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

namespace hypcrystal {

namespace {

const char* const kSqrtSign = "\xE2\x88\x9A";  // U+221A

}  // namespace

QuadNum::QuadNum(BigInt a, BigInt b, BigInt den, BigInt D)
    : a_(std::move(a)), b_(std::move(b)), den_(std::move(den)), D_(std::move(D)) {
  if (den_ == 0) throw std::invalid_argument("QuadNum: zero denominator");
  if (D_ <= 0) throw std::invalid_argument("QuadNum: D must be positive");
  if (mpz_perfect_square_p(D_.get_mpz_t()) != 0)
    throw std::invalid_argument("QuadNum: D must not be a perfect square");
  canonicalize();
}

QuadNum::QuadNum(BigInt a, BigInt b, BigInt den, BigInt D, Trusted)
    : a_(std::move(a)), b_(std::move(b)), den_(std::move(den)), D_(std::move(D)) {
  canonicalize();
}

QuadNum QuadNum::zero(const BigInt& D) { return QuadNum(0, 0, 1, D); }

QuadNum QuadNum::integer(const BigInt& n, const BigInt& D) { return QuadNum(n, 0, 1, D); }

QuadNum QuadNum::rational(const BigInt& num, const BigInt& den, const BigInt& D) {
  return QuadNum(num, 0, den, D);
}

void QuadNum::canonicalize() {
  if (den_ < 0) {
    den_ = -den_;
    a_ = -a_;
    b_ = -b_;
  }
  if (a_ == 0 && b_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

void QuadNum::require_same_field(const QuadNum& y) const {
  if (D_ != y.D_) throw std::invalid_argument("QuadNum: operands live in different fields");
}

int QuadNum::sign() const {
  // den > 0, so the sign is that of a + b*sqrt(D).
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with b^2 D.
  BigInt lhs = a_ * a_;
  BigInt rhs = b_ * b_ * D_;
  const int c = cmp(lhs, rhs);
  // c == 0 is impossible for non-square D.
  return c > 0 ? sa : sb;
}

QuadNum QuadNum::operator-() const { return QuadNum(-a_, -b_, den_, D_, Trusted{}); }

QuadNum QuadNum::conjugate() const { return QuadNum(a_, -b_, den_, D_, Trusted{}); }

QuadNum QuadNum::inverse() const {
  if (is_zero()) throw std::domain_error("QuadNum: division by zero");
  // den / (a + b sqrt D) = den (a - b sqrt D) / (a^2 - b^2 D)
  BigInt norm = a_ * a_ - b_ * b_ * D_;
  return QuadNum(den_ * a_, -den_ * b_, norm, D_, Trusted{});
}

QuadNum& QuadNum::operator+=(const QuadNum& y) {
  require_same_field(y);
  a_ = a_ * y.den_ + y.a_ * den_;
  b_ = b_ * y.den_ + y.b_ * den_;
  den_ *= y.den_;
  canonicalize();
  return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& y) {
  require_same_field(y);
  a_ = a_ * y.den_ - y.a_ * den_;
  b_ = b_ * y.den_ - y.b_ * den_;
  den_ *= y.den_;
  canonicalize();
  return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& y) {
  require_same_field(y);
  BigInt na = a_ * y.a_ + b_ * y.b_ * D_;
  BigInt nb = a_ * y.b_ + b_ * y.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  den_ *= y.den_;
  canonicalize();
  return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& y) {
  require_same_field(y);
  return *this *= y.inverse();
}

int QuadNum::compare(const QuadNum& y) const { return (*this - y).sign(); }

std::string QuadNum::to_string() const {
  std::string out = "(";
  out += a_.get_str();
  out += b_ < 0 ? "-" : "+";
  BigInt mag = abs(b_);
  out += mag.get_str();
  out += kSqrtSign;
  out += D_.get_str();
  out += ")/";
  out += den_.get_str();
  return out;
}

QuadNum QuadNum::parse(const std::string& text) {
  static const std::regex re(std::string(R"(^\((-?[0-9]+)([+-])([0-9]+))") + kSqrtSign +
                             R"(([0-9]+)\)/([0-9]+)$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw std::invalid_argument("QuadNum: cannot parse '" + text + "'");
  BigInt a(m[1].str());
  BigInt b(m[3].str());
  if (m[2].str() == "-") b = -b;
  return QuadNum(a, b, BigInt(m[5].str()), BigInt(m[4].str()));
}

double QuadNum::approx() const {
  return (a_.get_d() + b_.get_d() * std::sqrt(D_.get_d())) / den_.get_d();
}

QuadNum qnum_arith(const QuadNum& x, const QuadNum& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw std::invalid_argument("qnum_arith: unknown operation");
}

int qnum_sign(const QuadNum& x) { return x.sign(); }

BigInt hyperbolic_discriminant(long a1, long a2) {
  BigInt n = BigInt(a1) * a2;
  return n * n - 4 * n;
}

std::pair<QuadNum, QuadNum> make_alpha_beta(long a1, long a2) {
  if (a1 < 1 || a2 < 1) throw std::invalid_argument("make_alpha_beta: a1, a2 must be >= 1");
  if (static_cast<long long>(a1) * a2 <= 4)
    throw std::invalid_argument("make_alpha_beta: a1*a2 must exceed 4 (hyperbolic case)");
  BigInt n = BigInt(a1) * a2;
  BigInt D = hyperbolic_discriminant(a1, a2);
  return {QuadNum(n, 1, BigInt(2 * a2), D), QuadNum(n, 1, BigInt(2 * a1), D)};
}

}  // namespace hypcrystal
