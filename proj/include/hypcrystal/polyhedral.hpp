#pragma once

// Affine functions over Q(sqrt(D)), the generators of the cone Xi[lambda],
// membership in Sigma[lambda], and the operators beta-bar / S-bar.

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hypcrystal/crystal.hpp"

namespace hypcrystal {

/// c + sum_k phi_k zeta_k, zero coefficients never stored.
class LinFunc {
 public:
  explicit LinFunc(const BigInt& D);
  LinFunc(QuadNum constant, std::map<i64, QuadNum> coeffs);

  static LinFunc zeta(i64 k, const BigInt& D);

  const QuadNum& constant() const { return c_; }
  const std::map<i64, QuadNum>& coeffs() const { return coeffs_; }
  QuadNum coeff(i64 k) const;
  const BigInt& disc() const { return c_.disc(); }

  LinFunc& add_term(i64 k, const QuadNum& v);
  LinFunc& operator+=(const LinFunc& y);
  LinFunc& operator-=(const LinFunc& y);
  friend LinFunc operator+(LinFunc x, const LinFunc& y) { return x += y; }
  friend LinFunc operator-(LinFunc x, const LinFunc& y) { return x -= y; }
  friend LinFunc operator*(const QuadNum& s, const LinFunc& f);
  friend bool operator==(const LinFunc& x, const LinFunc& y) {
    return x.c_ == y.c_ && x.coeffs_ == y.coeffs_;
  }

  std::string to_string() const;
  nlohmann::ordered_json to_json() const;

 private:
  QuadNum c_;
  std::map<i64, QuadNum> coeffs_;
};

QuadNum lin_eval(const LinFunc& phi, const CrystalElt& elt);

enum class XiKind { Base0, Base1, PlusP, PlusG, PlusM, MinusP, MinusG, MinusM };

const char* to_string(XiKind kind);
bool is_plus_family(XiKind kind);
bool is_minus_family(XiKind kind);

struct XiIndex {
  XiKind kind;
  i64 k;  // ignored for the two base generators (stored as 0)
  friend auto operator<=>(const XiIndex&, const XiIndex&) = default;
  std::string to_string() const;
};

/// Lazy access to Xi[lambda] for one configuration.
class XiFamily {
 public:
  explicit XiFamily(LambdaConfig cfg);
  XiFamily(const XiFamily& other);

  const LambdaConfig& config() const { return cfg_; }
  const BigInt& disc() const { return cfg_.disc(); }

  /// Throws std::invalid_argument when k is on the wrong side.
  LinFunc generator(XiKind kind, i64 k) const;
  LinFunc generator(const XiIndex& idx) const { return generator(idx.kind, idx.k); }

  /// Generators that can be nonconstant on an element supported in [lo, hi].
  std::vector<XiIndex> touched(i64 lo, i64 hi) const;

  /// Exact sign of a generator at an element (fast integer path).
  int sign_at(const XiIndex& idx, const CrystalElt& elt) const;

  /// Tail constants gamma_{k+1}p_{k+1} - p_k (k >= 1) and
  /// gamma_{k-1}p_{k-1} - p_k (k <= 0) are checked to be >= 0 for
  /// |k| <= verified_bound(); ensure_tail extends the range.
  i64 verified_bound() const { return verified_.load(); }
  void ensure_tail(i64 bound) const;
  /// False once some checked tail constant turned out negative.
  bool tail_ok() const { return tail_ok_.load(); }

  static constexpr i64 kTailSlack = 40;

 private:
  struct Compiled {
    // (a0 + b0 sqrt D) + sum (a_j + b_j sqrt D) x_{k_j}, common positive
    // denominator dropped.
    BigInt a0, b0;
    std::vector<std::tuple<i64, BigInt, BigInt>> terms;
  };
  Compiled compile(const LinFunc& f) const;
  const Compiled& compiled(const XiIndex& idx, Compiled& scratch) const;

  LambdaConfig cfg_;
  static constexpr i64 kPre = 64;
  std::vector<Compiled> pre_;  // plus/minus families for |k| <= kPre
  Compiled base0_, base1_;
  mutable std::atomic<i64> verified_{0};
  mutable std::atomic<bool> tail_ok_{true};
  mutable std::mutex tail_mu_;
};

LinFunc xi_generator(const XiFamily& fam, XiKind kind, i64 k);

/// Every generator of Xi[lambda] is >= 0 at elt.  Throws
/// std::invalid_argument when elt's tag differs from lambda.
bool sigma_membership(const CrystalElt& elt, const XiFamily& fam);

/// First generator negative at elt, if any.
std::optional<XiIndex> first_violated(const CrystalElt& elt, const XiFamily& fam);

LinFunc beta_bar(const XiFamily& fam, i64 k);
LinFunc s_bar(const XiFamily& fam, i64 k, const LinFunc& phi);

/// One term of a cone decomposition: coeff * component with component a
/// generator, zeta_j (j >= 1) or -zeta_j (j <= 0).
struct ConeTerm {
  enum class Kind { Gen, Zeta, NegZeta } kind;
  XiIndex gen{XiKind::Base0, 0};
  i64 j = 0;
  QuadNum coeff;
};

/// The closed form of S-bar_j(generator) as a nonnegative combination.
std::vector<ConeTerm> appendix_decomposition(const XiFamily& fam, const XiIndex& gen, i64 j);

struct AppendixReport {
  i64 checked = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> negative_coefficients;
  bool ok() const { return mismatches.empty() && negative_coefficients.empty(); }
};

AppendixReport verify_appendix_a(const XiFamily& fam, i64 k_range);

}  // namespace hypcrystal
