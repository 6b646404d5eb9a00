#pragma once

// Weyl group action on the tensor crystal and the (depth-truncated)
// extremality predicate.

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypcrystal/crystal.hpp"

namespace hypcrystal {

class XiFamily;

/// w_k: (s2 s1)^n for k = 2n, s1 (s2 s1)^n for k = 2n + 1, and the mirror
/// words for k < 0.  w_k = s_{i_k} w_{k-1} (k >= 1), w_k = s_{i_{k+1}} w_{k+1}
/// (k <= 0).
struct WeylWord {
  i64 k = 0;

  /// Reduced word, leftmost letter first.
  std::vector<int> letters() const;
  /// Letters in the order their S_i are applied (rightmost first).
  std::vector<int> application_order() const;
  i64 length() const { return k < 0 ? -k : k; }
  std::string to_string() const;
};

/// S_i: f^n if n = <wt, alpha_i^vee> >= 0, else e^{-n}.  Throws
/// std::logic_error if an intermediate step is null.
CrystalElt weyl_S(const CartanData& cd, const CrystalElt& elt, int i);

CrystalElt weyl_Sw(const CartanData& cd, const CrystalElt& elt, i64 k);

enum class Dir { E, F };

CrystalElt ef_max(const CartanData& cd, const CrystalElt& elt, int i, Dir dir);

/// Memoised S_{w_k} elt for consecutive k in both directions.
class WeylWalk {
 public:
  WeylWalk(const CartanData& cd, CrystalElt start);
  /// References stay valid while the walk grows.
  const CrystalElt& at(i64 k);

 private:
  const CartanData& cd_;
  std::deque<CrystalElt> fwd_;  // k = 0, 1, 2, ...
  std::deque<CrystalElt> bwd_;  // k = -1, -2, ...
};

struct ExtremalViolation {
  i64 k;
  int i;
  std::string kind;  // "e_nonzero" or "f_nonzero"
};

struct ExtremalReport {
  i64 K = 0;
  bool extremal = true;
  std::vector<ExtremalViolation> violations;
};

/// Checks the extremality conditions on S_{w_k} elt for |k| <= K.  With
/// first_only the scan stops at the first violation.
ExtremalReport extremal_report(const CartanData& cd, const CrystalElt& elt, i64 K, bool first_only = false);

/// "Extremal up to depth K": the caller owns the truncation.
bool is_extremal(const CartanData& cd, const CrystalElt& elt, i64 K);

nlohmann::ordered_json to_json(const ExtremalReport& rep, const CrystalElt& elt);

/// Closed form of S_{w_k}(x*) for x = x^ (x) t_lambda (x) z_{-inf}.
std::optional<CrystalElt> sw_closed_form(const LambdaConfig& cfg, const CrystalElt& x, i64 k);

/// weyl_Sw(star_full(x), k) equals the closed form.  Throws
/// std::invalid_argument unless x lies in Sigma[lambda] with empty minus part.
bool sw_closed_form_check(const XiFamily& fam, const CrystalElt& x, i64 k);

}  // namespace hypcrystal
