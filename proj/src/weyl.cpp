#include "hypcrystal/weyl.hpp"

#include <stdexcept>

#include "hypcrystal/polyhedral.hpp"

namespace hypcrystal {

std::vector<int> WeylWord::application_order() const {
  std::vector<int> out;
  if (k > 0)
    for (i64 j = 1; j <= k; ++j) out.push_back(color(j));
  else
    for (i64 j = 0; j > k; --j) out.push_back(color(j));
  return out;
}

std::vector<int> WeylWord::letters() const {
  std::vector<int> out = application_order();
  return {out.rbegin(), out.rend()};
}

std::string WeylWord::to_string() const {
  if (k == 0) return "e";
  std::string s;
  for (int i : letters()) s += (i == 1 ? "s1" : "s2");
  return s;
}

CrystalElt weyl_S(const CartanData& cd, const CrystalElt& elt, int i) {
  const i64 n = weight(cd, elt).pairing(i);
  CrystalElt cur = elt;
  for (i64 t = 0; t < (n >= 0 ? n : -n); ++t) {
    auto next = n >= 0 ? apply_f(cd, cur, i) : apply_e(cd, cur, i);
    if (!next) throw std::logic_error("weyl_S: not a normal-crystal element at this point");
    cur = std::move(*next);
  }
  return cur;
}

CrystalElt weyl_Sw(const CartanData& cd, const CrystalElt& elt, i64 k) {
  CrystalElt cur = elt;
  for (int i : WeylWord{k}.application_order()) cur = weyl_S(cd, cur, i);
  return cur;
}

CrystalElt ef_max(const CartanData& cd, const CrystalElt& elt, int i, Dir dir) {
  CrystalElt cur = elt;
  for (;;) {
    auto next = dir == Dir::E ? apply_e(cd, cur, i) : apply_f(cd, cur, i);
    if (!next) return cur;
    cur = std::move(*next);
  }
}

WeylWalk::WeylWalk(const CartanData& cd, CrystalElt start) : cd_(cd) { fwd_.push_back(std::move(start)); }

const CrystalElt& WeylWalk::at(i64 k) {
  if (k >= 0) {
    while (static_cast<i64>(fwd_.size()) <= k) {
      const i64 j = static_cast<i64>(fwd_.size());
      CrystalElt next = weyl_S(cd_, fwd_.back(), color(j));
      fwd_.push_back(std::move(next));
    }
    return fwd_[k];
  }
  while (static_cast<i64>(bwd_.size()) < -k) {
    const i64 j = -static_cast<i64>(bwd_.size()) - 1;  // building w_j from w_{j+1}
    const CrystalElt& prev = bwd_.empty() ? fwd_.front() : bwd_.back();
    CrystalElt next = weyl_S(cd_, prev, color(j + 1));
    bwd_.push_back(std::move(next));
  }
  return bwd_[-k - 1];
}

ExtremalReport extremal_report(const CartanData& cd, const CrystalElt& elt, i64 K, bool first_only) {
  ExtremalReport rep;
  rep.K = K;
  WeylWalk walk(cd, elt);
  // Order 0, 1, -1, 2, -2, ... so that first_only finds small |k| first.
  std::vector<i64> ks{0};
  for (i64 a = 1; a <= K; ++a) {
    ks.push_back(a);
    ks.push_back(-a);
  }
  for (i64 k : ks) {
    const CrystalElt& b = walk.at(k);
    const Weight w = weight(cd, b);
    for (int i : {1, 2}) {
      const i64 n = w.pairing(i);
      EpsPhi ep = eps_phi(cd, b, i);
      if (n >= 0 && ep.eps != 0) rep.violations.push_back({k, i, "e_nonzero"});
      if (n <= 0 && ep.phi != 0) rep.violations.push_back({k, i, "f_nonzero"});
    }
    if (first_only && !rep.violations.empty()) {
      rep.extremal = false;
      return rep;
    }
  }
  rep.extremal = rep.violations.empty();
  return rep;
}

bool is_extremal(const CartanData& cd, const CrystalElt& elt, i64 K) {
  return extremal_report(cd, elt, K, true).extremal;
}

nlohmann::ordered_json to_json(const ExtremalReport& rep, const CrystalElt& elt) {
  nlohmann::ordered_json v = nlohmann::ordered_json::array();
  for (const auto& x : rep.violations) v.push_back({{"k", x.k}, {"i", x.i}, {"kind", x.kind}});
  return {{"element", to_json(elt)}, {"K", rep.K}, {"extremal", rep.extremal}, {"violations", v}};
}

std::optional<CrystalElt> sw_closed_form(const LambdaConfig& cfg, const CrystalElt& x, i64 k) {
  const CartanData& cd = cfg.cartan();
  CrystalElt out;
  out.plus = star_plus(x.plus, cd);
  out.tag = -x.tag - part_weight(cd, x.plus);
  if (k >= 0) {
    for (i64 j = 1; j <= k; ++j) {
      for (i64 t = 0; t < x.plus.get(j); ++t) {
        auto next = plus_lattice::apply_e(cd, out.plus, color(j));
        if (!next) return std::nullopt;
        out.plus = std::move(*next);
      }
      const i64 r = cfg.p_int(j) - x.plus.get(j);
      if (r < 0) return std::nullopt;
      for (i64 t = 0; t < r; ++t) out.minus = minus_lattice::apply_e(cd, out.minus, color(j));
    }
    return out;
  }
  for (i64 j = 0; j > k; --j)
    for (i64 t = 0; t < cfg.p_int(j); ++t) out.plus = plus_lattice::apply_f(cd, out.plus, color(j));
  return out;
}

bool sw_closed_form_check(const XiFamily& fam, const CrystalElt& x, i64 k) {
  if (!x.minus.empty()) throw std::invalid_argument("sw_closed_form_check: minus part must be empty");
  if (!sigma_membership(x, fam)) throw std::invalid_argument("sw_closed_form_check: element is not in Sigma");
  const CartanData& cd = fam.config().cartan();
  auto closed = sw_closed_form(fam.config(), x, k);
  if (!closed) return false;
  return weyl_Sw(cd, star_full(x, cd), k) == *closed;
}

}  // namespace hypcrystal
