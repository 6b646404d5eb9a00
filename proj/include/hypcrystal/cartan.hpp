#pragma once

// Rank-2 hyperbolic Cartan data, the integer sequences c, c', p and the
// orbit classification of weights k1 L1 - k2 L2.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypcrystal/quadfield.hpp"
#include "json.hpp"

namespace hypcrystal {

using i64 = std::int64_t;

namespace detail {

inline i64 add(i64 x, i64 y) {
  i64 r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("int64 overflow in add");
  return r;
}
inline i64 sub(i64 x, i64 y) {
  i64 r;
  if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("int64 overflow in sub");
  return r;
}
inline i64 mul(i64 x, i64 y) {
  i64 r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("int64 overflow in mul");
  return r;
}
i64 to_i64(const BigInt& v);

}  // namespace detail

/// Colour of lattice index k in the fixed sequence (..., 2, 1, 2, 1):
/// 1 for odd k, 2 for even k (also for k <= 0).
inline int color(i64 k) { return (k & 1) ? 1 : 2; }

/// m1 L1 + m2 L2.
struct Weight {
  i64 m1 = 0;
  i64 m2 = 0;

  i64 pairing(int i) const { return i == 1 ? m1 : m2; }  // <mu, alpha_i^vee>
  bool is_dominant() const { return m1 >= 0 && m2 >= 0; }
  bool is_antidominant() const { return m1 <= 0 && m2 <= 0; }
  bool in_quadrant() const { return m1 > 0 && m2 < 0; }

  friend Weight operator+(Weight x, Weight y) { return {detail::add(x.m1, y.m1), detail::add(x.m2, y.m2)}; }
  friend Weight operator-(Weight x, Weight y) { return {detail::sub(x.m1, y.m1), detail::sub(x.m2, y.m2)}; }
  friend Weight operator-(Weight x) { return {detail::sub(0, x.m1), detail::sub(0, x.m2)}; }
  friend Weight operator*(i64 s, Weight x) { return {detail::mul(s, x.m1), detail::mul(s, x.m2)}; }
  friend auto operator<=>(const Weight&, const Weight&) = default;

  std::string to_string() const;
};

nlohmann::ordered_json to_json(const Weight& w);
Weight weight_from_json(const nlohmann::ordered_json& j);

class CartanData {
 public:
  /// Throws std::invalid_argument unless a1, a2 >= 1 and a1 a2 > 4.
  CartanData(i64 a1, i64 a2);

  i64 a1() const { return a1_; }
  i64 a2() const { return a2_; }
  i64 a(int i) const { return i == 1 ? a1_ : a2_; }

  /// <alpha_j, alpha_i^vee>.
  i64 pairing(int i, int j) const {
    if (i == j) return 2;
    return i == 1 ? -a1_ : -a2_;
  }
  Weight simple_root(int i) const { return i == 1 ? Weight{2, -a2_} : Weight{-a1_, 2}; }
  Weight reflect(const Weight& mu, int i) const;
  BigInt discriminant() const { return hyperbolic_discriminant(a1_, a2_); }

  /// c_j (cprime = false) or c'_j, j >= 0.  Cached up to kSeqCache.
  const BigInt& c(i64 j, bool cprime = false) const;

  friend bool operator==(const CartanData& x, const CartanData& y) {
    return x.a1_ == y.a1_ && x.a2_ == y.a2_;
  }

  static constexpr i64 kSeqCache = 512;

 private:
  i64 a1_;
  i64 a2_;
  std::shared_ptr<const std::vector<BigInt>> c_;
  std::shared_ptr<const std::vector<BigInt>> cp_;
};

enum class SeqKind { C, CPrime };

BigInt c_seq(const CartanData& cd, SeqKind kind, i64 j);

/// p^mu_m with p0 = -m2 and p1 = m1, extended in both directions by
/// p_m + p_{m+2} = (a2 if m even else a1) p_{m+1}.  For mu = k L1 - l L2
/// this is the usual p0 = l, p1 = k.
BigInt p_seq(const CartanData& cd, const Weight& mu, i64 m);

/// w_k mu computed from p^mu.
Weight weyl_translate(const CartanData& cd, const Weight& mu, i64 k);

/// The weight w_k mu written in terms of (p_k, p_{k+1}).
Weight translate_from_pair(i64 k, i64 pk, i64 pk1);

enum class LambdaForm { FormI, FormII, A1One, A2One, Reject };

const char* to_string(LambdaForm f);

LambdaForm validate_lambda_form(const CartanData& cd, i64 k1, i64 k2);

struct Witness {
  i64 k;
  Weight weight;
};

struct OrbitClass {
  bool satisfies_A = false;
  std::optional<Weight> representative;
  std::optional<i64> representative_k;  // representative = w_k mu
  std::optional<Witness> witness;
  i64 scanned_lo = 0;
  i64 scanned_hi = 0;
};

/// Decides whether the Weyl orbit of mu misses both P+ and -P+.
OrbitClass classify_orbit(const CartanData& cd, const Weight& mu);

/// How a LambdaConfig's weight was admitted.
enum class LambdaCase { FormI, FormII, A1One, A2One, OrbitTranslate };

const char* to_string(LambdaCase c);

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// lambda = k1 L1 - k2 L2 together with cached c, c', p and gamma.
/// Immutable after construction, so safe to share between threads.
class LambdaConfig {
 public:
  static constexpr i64 kCacheBound = 128;

  /// Throws InvalidConfig if the Cartan data or lambda is not admissible.
  LambdaConfig(i64 a1, i64 a2, i64 k1, i64 k2);

  const CartanData& cartan() const { return cd_; }
  i64 a1() const { return cd_.a1(); }
  i64 a2() const { return cd_.a2(); }
  i64 k1() const { return k1_; }
  i64 k2() const { return k2_; }
  Weight lambda() const { return {k1_, -k2_}; }
  LambdaCase lambda_case() const { return case_; }

  BigInt p(i64 m) const;
  /// p_m as int64; throws std::overflow_error if it does not fit.
  i64 p_int(i64 m) const;
  const BigInt& c(i64 j) const { return cd_.c(j, false); }
  const BigInt& cprime(i64 j) const { return cd_.c(j, true); }

  const QuadNum& alpha() const { return alpha_; }
  const QuadNum& beta() const { return beta_; }
  const QuadNum& gamma(i64 k) const { return (k & 1) ? beta_ : alpha_; }
  const BigInt& disc() const { return alpha_.disc(); }

  nlohmann::ordered_json to_json() const;
  std::string label() const;

 private:
  CartanData cd_;
  i64 k1_;
  i64 k2_;
  LambdaCase case_;
  QuadNum alpha_;
  QuadNum beta_;
  std::vector<BigInt> p_;  // p_[m + kCacheBound]
};

LambdaConfig config_from_json(const nlohmann::ordered_json& j);

}  // namespace hypcrystal
