#pragma once

// The lattice crystals Z^{+inf}_{>=0}, Z^{-inf}_{<=0} and their tensor
// product with T_mu, realised on finitely supported integer vectors.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypcrystal/cartan.hpp"

namespace hypcrystal {

/// x_k >= 0 for k >= 1, finitely many nonzero.  Stored densely:
/// x_[k-1] = x_k, no trailing zeros.
class PlusVec {
 public:
  PlusVec() = default;
  /// Throws std::invalid_argument on keys < 1 or negative values.
  explicit PlusVec(const std::map<i64, i64>& entries);

  i64 get(i64 k) const { return (k >= 1 && k <= hi()) ? x_[k - 1] : 0; }
  void set(i64 k, i64 v);
  void add(i64 k, i64 delta) { set(k, detail::add(get(k), delta)); }

  /// Largest index with x_k != 0, or 0 when empty.
  i64 hi() const { return static_cast<i64>(x_.size()); }
  bool empty() const { return x_.empty(); }
  std::map<i64, i64> entries() const;
  const std::vector<i64>& dense() const { return x_; }

  friend auto operator<=>(const PlusVec&, const PlusVec&) = default;

 private:
  std::vector<i64> x_;
};

/// x_k <= 0 for k <= 0, finitely many nonzero.  y_[-k] = x_k.
class MinusVec {
 public:
  MinusVec() = default;
  explicit MinusVec(const std::map<i64, i64>& entries);

  i64 get(i64 k) const { return (k <= 0 && k >= lo()) ? y_[-k] : 0; }
  void set(i64 k, i64 v);
  void add(i64 k, i64 delta) { set(k, detail::add(get(k), delta)); }

  /// Smallest index with x_k != 0, or 1 when empty.
  i64 lo() const { return 1 - static_cast<i64>(y_.size()); }
  bool empty() const { return y_.empty(); }
  std::map<i64, i64> entries() const;

  friend auto operator<=>(const MinusVec&, const MinusVec&) = default;

 private:
  std::vector<i64> y_;
};

/// x+ (x) t_tag (x) x-.
struct CrystalElt {
  PlusVec plus;
  Weight tag;
  MinusVec minus;

  static CrystalElt highest(const Weight& tag) { return {PlusVec{}, tag, MinusVec{}}; }

  /// Coordinate x_k on either side.
  i64 x(i64 k) const { return k >= 1 ? plus.get(k) : minus.get(k); }
  i64 lo() const { return minus.lo(); }
  i64 hi() const { return plus.hi(); }

  friend auto operator<=>(const CrystalElt&, const CrystalElt&) = default;
};

/// -sum x_j alpha_{i_j} over the plus part.
Weight part_weight(const CartanData& cd, const PlusVec& v);
Weight part_weight(const CartanData& cd, const MinusVec& v);
/// tag - sum_j x_j alpha_{i_j}.
Weight weight(const CartanData& cd, const CrystalElt& elt);

i64 sigma_k(const CartanData& cd, const CrystalElt& elt, i64 k);

struct EpsPhi {
  i64 eps;
  i64 phi;
};

EpsPhi eps_phi(const CartanData& cd, const CrystalElt& elt, int i);

/// nullopt plays the role of the null element.
std::optional<CrystalElt> apply_f(const CartanData& cd, const CrystalElt& elt, int i);
std::optional<CrystalElt> apply_e(const CartanData& cd, const CrystalElt& elt, int i);

/// Operators of the factors Z^{+inf}_{>=0} (B(inf) side) and Z^{-inf}_{<=0}
/// (B(-inf) side) on their own.
namespace plus_lattice {
EpsPhi eps_phi(const CartanData& cd, const PlusVec& v, int i);
PlusVec apply_f(const CartanData& cd, const PlusVec& v, int i);
std::optional<PlusVec> apply_e(const CartanData& cd, const PlusVec& v, int i);
}  // namespace plus_lattice

namespace minus_lattice {
EpsPhi eps_phi(const CartanData& cd, const MinusVec& v, int i);
std::optional<MinusVec> apply_f(const CartanData& cd, const MinusVec& v, int i);
MinusVec apply_e(const CartanData& cd, const MinusVec& v, int i);
}  // namespace minus_lattice

bool img_membership(const PlusVec& v, const CartanData& cd);
bool img_membership(const MinusVec& v, const CartanData& cd);
bool img_membership(const CrystalElt& elt, const CartanData& cd);

/// Throw std::invalid_argument when the argument is outside Img.
PlusVec star_plus(const PlusVec& v, const CartanData& cd);
MinusVec star_minus(const MinusVec& v, const CartanData& cd);
CrystalElt star_full(const CrystalElt& elt, const CartanData& cd);

/// Canonical JSON text, keys in ascending numeric order:
/// {"plus": {"1": 1, "2": 1}, "tag": [1, -1], "minus": {"0": -1}}
std::string to_json_string(const CrystalElt& elt);
nlohmann::ordered_json to_json(const CrystalElt& elt);
CrystalElt element_from_json(const nlohmann::ordered_json& j);
CrystalElt element_from_string(const std::string& text);

}  // namespace hypcrystal
