#include "hypcrystal/crystal.hpp"

#include <stdexcept>

namespace hypcrystal {

using detail::add;
using detail::mul;
using detail::sub;

PlusVec::PlusVec(const std::map<i64, i64>& entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

void PlusVec::set(i64 k, i64 v) {
  if (k < 1) throw std::invalid_argument("plus part index must be >= 1");
  if (v < 0) throw std::invalid_argument("plus part entries must be >= 0");
  if (v == 0) {
    if (k <= hi()) {
      x_[k - 1] = 0;
      while (!x_.empty() && x_.back() == 0) x_.pop_back();
    }
    return;
  }
  if (k > hi()) x_.resize(k, 0);
  x_[k - 1] = v;
}

std::map<i64, i64> PlusVec::entries() const {
  std::map<i64, i64> out;
  for (i64 k = 1; k <= hi(); ++k)
    if (x_[k - 1] != 0) out[k] = x_[k - 1];
  return out;
}

MinusVec::MinusVec(const std::map<i64, i64>& entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

void MinusVec::set(i64 k, i64 v) {
  if (k > 0) throw std::invalid_argument("minus part index must be <= 0");
  if (v > 0) throw std::invalid_argument("minus part entries must be <= 0");
  const i64 idx = -k;
  if (v == 0) {
    if (idx < static_cast<i64>(y_.size())) {
      y_[idx] = 0;
      while (!y_.empty() && y_.back() == 0) y_.pop_back();
    }
    return;
  }
  if (idx >= static_cast<i64>(y_.size())) y_.resize(idx + 1, 0);
  y_[idx] = v;
}

std::map<i64, i64> MinusVec::entries() const {
  std::map<i64, i64> out;
  for (i64 k = lo(); k <= 0; ++k)
    if (y_[-k] != 0) out[k] = y_[-k];
  return out;
}

Weight part_weight(const CartanData& cd, const PlusVec& v) {
  Weight w;
  for (i64 k = 1; k <= v.hi(); ++k)
    if (v.get(k) != 0) w = w - v.get(k) * cd.simple_root(color(k));
  return w;
}

Weight part_weight(const CartanData& cd, const MinusVec& v) {
  Weight w;
  for (i64 k = v.lo(); k <= 0; ++k)
    if (v.get(k) != 0) w = w - v.get(k) * cd.simple_root(color(k));
  return w;
}

Weight weight(const CartanData& cd, const CrystalElt& elt) {
  return elt.tag + part_weight(cd, elt.plus) + part_weight(cd, elt.minus);
}

namespace {

// Maximum of sigma over the indices of colour i in a window, with the
// smallest and largest indices attaining it.
struct Scan {
  i64 max;
  i64 kmin;
  i64 kmax;
};

// Tensor sigma: for every k,
//   sigma_k = x_k + sum_{j>k} <alpha_{i_j}, alpha_{i_k}^vee> x_j - [k<=0] tag_{i_k},
// which equals both one-sided definitions.
Scan scan_tensor(const CartanData& cd, const CrystalElt& elt, int i) {
  const i64 L = std::min<i64>(elt.lo(), 1) - 2;
  const i64 H = std::max<i64>(elt.hi(), 0) + 2;
  const i64 pi1 = cd.pairing(i, 1), pi2 = cd.pairing(i, 2);
  const i64 ti = elt.tag.pairing(i);
  i64 r1 = 0, r2 = 0;  // suffix sums of x_j, j > k, per colour
  Scan s{0, 0, 0};
  bool first = true;
  for (i64 k = H; k >= L; --k) {
    const i64 xk = elt.x(k);
    if (color(k) == i) {
      i64 sig = add(xk, add(mul(pi1, r1), mul(pi2, r2)));
      if (k <= 0) sig = sub(sig, ti);
      if (first || sig > s.max) {
        s = {sig, k, k};
        first = false;
      } else if (sig == s.max) {
        s.kmin = k;
      }
    }
    if (xk != 0) (color(k) == 1 ? r1 : r2) = add(color(k) == 1 ? r1 : r2, xk);
  }
  return s;
}

Scan scan_plus(const CartanData& cd, const PlusVec& v, int i) {
  const i64 H = v.hi() + 2;
  const i64 pi1 = cd.pairing(i, 1), pi2 = cd.pairing(i, 2);
  i64 r1 = 0, r2 = 0;
  Scan s{0, 0, 0};
  bool first = true;
  for (i64 k = H; k >= 1; --k) {
    const i64 xk = v.get(k);
    if (color(k) == i) {
      const i64 sig = add(xk, add(mul(pi1, r1), mul(pi2, r2)));
      if (first || sig > s.max) {
        s = {sig, k, k};
        first = false;
      } else if (sig == s.max) {
        s.kmin = k;
      }
    }
    if (xk != 0) (color(k) == 1 ? r1 : r2) = add(color(k) == 1 ? r1 : r2, xk);
  }
  return s;
}

// sigma^-_k = -x_k - sum_{j<k} <alpha_{i_j}, alpha_{i_k}^vee> x_j, k <= 0.
Scan scan_minus(const CartanData& cd, const MinusVec& v, int i) {
  const i64 L = v.lo() - 2;
  const i64 pi1 = cd.pairing(i, 1), pi2 = cd.pairing(i, 2);
  i64 r1 = 0, r2 = 0;  // prefix sums of x_j, j < k
  Scan s{0, 0, 0};
  bool first = true;
  for (i64 k = L; k <= 0; ++k) {
    const i64 xk = v.get(k);
    if (color(k) == i) {
      const i64 sig = sub(sub(0, xk), add(mul(pi1, r1), mul(pi2, r2)));
      if (first || sig > s.max) {
        s = {sig, k, k};
        first = false;
      } else if (sig == s.max) {
        s.kmax = k;
      }
    }
    if (xk != 0) (color(k) == 1 ? r1 : r2) = add(color(k) == 1 ? r1 : r2, xk);
  }
  return s;
}

void bump(CrystalElt& e, i64 k, i64 delta) {
  if (k >= 1) {
    if (e.plus.get(k) + delta < 0) throw std::logic_error("crystal operator left Z_{>=0} at index " + std::to_string(k));
    e.plus.add(k, delta);
  } else {
    if (e.minus.get(k) + delta > 0) throw std::logic_error("crystal operator left Z_{<=0} at index " + std::to_string(k));
    e.minus.add(k, delta);
  }
}

}  // namespace

i64 sigma_k(const CartanData& cd, const CrystalElt& elt, i64 k) {
  const int ik = color(k);
  i64 s = 0;
  if (k >= 1) {
    s = elt.x(k);
    for (i64 j = k + 1; j <= elt.hi(); ++j) s = add(s, mul(cd.pairing(ik, color(j)), elt.x(j)));
    return s;
  }
  s = sub(0, elt.x(k));
  for (i64 j = elt.lo(); j < k; ++j) s = sub(s, mul(cd.pairing(ik, color(j)), elt.x(j)));
  return sub(s, weight(cd, elt).pairing(ik));
}

EpsPhi eps_phi(const CartanData& cd, const CrystalElt& elt, int i) {
  const Scan s = scan_tensor(cd, elt, i);
  return {s.max, add(s.max, weight(cd, elt).pairing(i))};
}

std::optional<CrystalElt> apply_f(const CartanData& cd, const CrystalElt& elt, int i) {
  const Scan s = scan_tensor(cd, elt, i);
  if (add(s.max, weight(cd, elt).pairing(i)) == 0) return std::nullopt;
  CrystalElt out = elt;
  bump(out, s.kmin, 1);
  return out;
}

std::optional<CrystalElt> apply_e(const CartanData& cd, const CrystalElt& elt, int i) {
  const Scan s = scan_tensor(cd, elt, i);
  if (s.max == 0) return std::nullopt;
  CrystalElt out = elt;
  bump(out, s.kmax, -1);
  return out;
}

namespace plus_lattice {

EpsPhi eps_phi(const CartanData& cd, const PlusVec& v, int i) {
  const Scan s = scan_plus(cd, v, i);
  return {s.max, add(s.max, part_weight(cd, v).pairing(i))};
}

PlusVec apply_f(const CartanData& cd, const PlusVec& v, int i) {
  PlusVec out = v;
  out.add(scan_plus(cd, v, i).kmin, 1);
  return out;
}

std::optional<PlusVec> apply_e(const CartanData& cd, const PlusVec& v, int i) {
  const Scan s = scan_plus(cd, v, i);
  if (s.max == 0) return std::nullopt;
  PlusVec out = v;
  if (out.get(s.kmax) < 1) throw std::logic_error("plus-lattice e: entry would become negative");
  out.add(s.kmax, -1);
  return out;
}

}  // namespace plus_lattice

namespace minus_lattice {

EpsPhi eps_phi(const CartanData& cd, const MinusVec& v, int i) {
  const Scan s = scan_minus(cd, v, i);
  return {sub(s.max, part_weight(cd, v).pairing(i)), s.max};
}

std::optional<MinusVec> apply_f(const CartanData& cd, const MinusVec& v, int i) {
  const Scan s = scan_minus(cd, v, i);
  if (s.max == 0) return std::nullopt;
  MinusVec out = v;
  if (out.get(s.kmin) > -1) throw std::logic_error("minus-lattice f: entry would become positive");
  out.add(s.kmin, 1);
  return out;
}

MinusVec apply_e(const CartanData& cd, const MinusVec& v, int i) {
  MinusVec out = v;
  out.add(scan_minus(cd, v, i).kmax, -1);
  return out;
}

}  // namespace minus_lattice

bool img_membership(const PlusVec& v, const CartanData& cd) {
  for (i64 j = 1; j <= v.hi(); ++j) {
    const BigInt lhs = c_seq(cd, SeqKind::C, j) * BigInt(v.get(j)) - c_seq(cd, SeqKind::C, j - 1) * BigInt(v.get(j + 1));
    if (lhs < 0) return false;
  }
  return true;
}

bool img_membership(const MinusVec& v, const CartanData& cd) {
  for (i64 j = v.lo(); j <= 0; ++j) {
    const BigInt lhs = c_seq(cd, SeqKind::CPrime, 1 - j) * BigInt(v.get(j)) -
                       c_seq(cd, SeqKind::CPrime, -j) * BigInt(v.get(j - 1));
    if (lhs > 0) return false;
  }
  return true;
}

bool img_membership(const CrystalElt& elt, const CartanData& cd) {
  return img_membership(elt.plus, cd) && img_membership(elt.minus, cd);
}

PlusVec star_plus(const PlusVec& v, const CartanData& cd) {
  if (!img_membership(v, cd)) throw std::invalid_argument("star_plus: argument is not in the image");
  PlusVec out;
  for (i64 k = v.hi(); k >= 1; --k)
    for (i64 n = 0; n < v.get(k); ++n) out = plus_lattice::apply_f(cd, out, color(k));
  return out;
}

MinusVec star_minus(const MinusVec& v, const CartanData& cd) {
  if (!img_membership(v, cd)) throw std::invalid_argument("star_minus: argument is not in the image");
  MinusVec out;
  for (i64 k = v.lo(); k <= 0; ++k)
    for (i64 n = 0; n < -v.get(k); ++n) out = minus_lattice::apply_e(cd, out, color(k));
  return out;
}

CrystalElt star_full(const CrystalElt& elt, const CartanData& cd) {
  CrystalElt out;
  out.plus = star_plus(elt.plus, cd);
  out.minus = star_minus(elt.minus, cd);
  out.tag = -elt.tag - part_weight(cd, elt.plus) - part_weight(cd, elt.minus);
  return out;
}

namespace {

void append_part(std::string& s, const std::map<i64, i64>& m) {
  s += '{';
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!first) s += ", ";
    first = false;
    s += '"' + std::to_string(k) + "\": " + std::to_string(v);
  }
  s += '}';
}

std::map<i64, i64> part_from_json(const nlohmann::ordered_json& j, const char* name) {
  if (!j.is_object()) throw std::invalid_argument(std::string(name) + " must be an object");
  std::map<i64, i64> out;
  for (const auto& [key, val] : j.items()) {
    std::size_t used = 0;
    i64 k = 0;
    try {
      k = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) throw std::invalid_argument(std::string(name) + ": bad index '" + key + "'");
    if (!val.is_number_integer()) throw std::invalid_argument(std::string(name) + ": entries must be integers");
    out[k] = val.get<i64>();
  }
  return out;
}

}  // namespace

std::string to_json_string(const CrystalElt& elt) {
  std::string s = "{\"plus\": ";
  append_part(s, elt.plus.entries());
  s += ", \"tag\": [" + std::to_string(elt.tag.m1) + ", " + std::to_string(elt.tag.m2) + "], \"minus\": ";
  append_part(s, elt.minus.entries());
  s += '}';
  return s;
}

nlohmann::ordered_json to_json(const CrystalElt& elt) {
  nlohmann::ordered_json plus = nlohmann::ordered_json::object(), minus = nlohmann::ordered_json::object();
  for (const auto& [k, v] : elt.plus.entries()) plus[std::to_string(k)] = v;
  for (const auto& [k, v] : elt.minus.entries()) minus[std::to_string(k)] = v;
  return {{"plus", plus}, {"tag", to_json(elt.tag)}, {"minus", minus}};
}

CrystalElt element_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("plus") || !j.contains("tag") || !j.contains("minus"))
    throw std::invalid_argument("element JSON needs plus, tag and minus");
  CrystalElt e;
  e.plus = PlusVec(part_from_json(j["plus"], "plus"));
  e.tag = weight_from_json(j["tag"]);
  e.minus = MinusVec(part_from_json(j["minus"], "minus"));
  return e;
}

CrystalElt element_from_string(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("element JSON: ") + e.what());
  }
  return element_from_json(j);
}

}  // namespace hypcrystal
