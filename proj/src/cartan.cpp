#include "hypcrystal/cartan.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <tuple>

namespace hypcrystal {

i64 detail::to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("value does not fit in int64: " + v.get_str());
  return v.get_si();
}

std::string Weight::to_string() const {
  return "(" + std::to_string(m1) + ", " + std::to_string(m2) + ")";
}

nlohmann::ordered_json to_json(const Weight& w) { return nlohmann::ordered_json::array({w.m1, w.m2}); }

Weight weight_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw std::invalid_argument("weight must be a two-element integer array");
  return {j[0].get<i64>(), j[1].get<i64>()};
}

namespace {

std::shared_ptr<const std::vector<BigInt>> build_c(i64 first, i64 second, i64 n) {
  // first multiplies when j is even, second when j is odd.
  auto v = std::make_shared<std::vector<BigInt>>(n + 1);
  (*v)[0] = 0;
  (*v)[1] = 1;
  for (i64 j = 0; j + 2 <= n; ++j)
    (*v)[j + 2] = ((j & 1) ? second : first) * (*v)[j + 1] - (*v)[j];
  return v;
}

}  // namespace

CartanData::CartanData(i64 a1, i64 a2) : a1_(a1), a2_(a2) {
  if (a1 < 1 || a2 < 1) throw std::invalid_argument("Cartan data: a1, a2 must be >= 1");
  if (a1 > 1000000 || a2 > 1000000) throw std::invalid_argument("Cartan data: a1, a2 too large");
  if (a1 * a2 <= 4) throw std::invalid_argument("Cartan data: a1*a2 must exceed 4");
  c_ = build_c(a1, a2, kSeqCache);
  cp_ = build_c(a2, a1, kSeqCache);
}

Weight CartanData::reflect(const Weight& mu, int i) const {
  return mu - mu.pairing(i) * simple_root(i);
}

const BigInt& CartanData::c(i64 j, bool cprime) const {
  if (j < 0) throw std::out_of_range("c_j needs j >= 0");
  if (j > kSeqCache) throw std::out_of_range("c_j beyond cached range; use c_seq");
  return cprime ? (*cp_)[j] : (*c_)[j];
}

BigInt c_seq(const CartanData& cd, SeqKind kind, i64 j) {
  if (j < 0) throw std::out_of_range("c_seq: j must be >= 0");
  const bool cp = kind == SeqKind::CPrime;
  if (j <= CartanData::kSeqCache) return cd.c(j, cp);
  const i64 first = cp ? cd.a2() : cd.a1();
  const i64 second = cp ? cd.a1() : cd.a2();
  BigInt x = cd.c(CartanData::kSeqCache - 1, cp), y = cd.c(CartanData::kSeqCache, cp);
  for (i64 t = CartanData::kSeqCache - 1; t + 2 <= j; ++t) {
    BigInt z = ((t & 1) ? second : first) * y - x;
    x = std::move(y);
    y = std::move(z);
  }
  return y;
}

namespace {

// Multiplier in p_m + p_{m+2} = r(m) p_{m+1}.
i64 p_mult(const CartanData& cd, i64 m) { return (m & 1) ? cd.a1() : cd.a2(); }

}  // namespace

BigInt p_seq(const CartanData& cd, const Weight& mu, i64 m) {
  BigInt x = -mu.m2, y = mu.m1;  // (p_t, p_{t+1}) with t = 0
  if (m == 0) return x;
  if (m == 1) return y;
  if (m > 1) {
    for (i64 t = 0; t + 2 <= m; ++t) {
      BigInt z = p_mult(cd, t) * y - x;
      x = std::move(y);
      y = std::move(z);
    }
    return y;
  }
  // Backward: p_t = r(t) p_{t+1} - p_{t+2}; keep (p_t, p_{t+1}).
  for (i64 t = -1; t >= m; --t) {
    BigInt z = p_mult(cd, t) * x - y;
    y = std::move(x);
    x = std::move(z);
  }
  return x;
}

Weight translate_from_pair(i64 k, i64 pk, i64 pk1) {
  if (k & 1) return {detail::sub(0, pk), pk1};
  return {pk1, detail::sub(0, pk)};
}

Weight weyl_translate(const CartanData& cd, const Weight& mu, i64 k) {
  return translate_from_pair(k, detail::to_i64(p_seq(cd, mu, k)), detail::to_i64(p_seq(cd, mu, k + 1)));
}

const char* to_string(LambdaForm f) {
  switch (f) {
    case LambdaForm::FormI: return "form-i";
    case LambdaForm::FormII: return "form-ii";
    case LambdaForm::A1One: return "a1-one";
    case LambdaForm::A2One: return "a2-one";
    case LambdaForm::Reject: return "reject";
  }
  return "?";
}

const char* to_string(LambdaCase c) {
  switch (c) {
    case LambdaCase::FormI: return "form-i";
    case LambdaCase::FormII: return "form-ii";
    case LambdaCase::A1One: return "a1-one";
    case LambdaCase::A2One: return "a2-one";
    case LambdaCase::OrbitTranslate: return "orbit-translate";
  }
  return "?";
}

LambdaForm validate_lambda_form(const CartanData& cd, i64 k1, i64 k2) {
  if (k1 <= 0 || k2 <= 0) return LambdaForm::Reject;
  const i64 a1 = cd.a1(), a2 = cd.a2();
  if (a1 == 1) return (2 * k1 <= k2 && k2 <= (a2 - 2) * k1) ? LambdaForm::A1One : LambdaForm::Reject;
  if (a2 == 1) return (2 * k2 <= k1 && k1 <= (a1 - 2) * k2) ? LambdaForm::A2One : LambdaForm::Reject;
  if (k2 <= k1 && k1 < (a1 - 1) * k2) return LambdaForm::FormI;
  if (k1 < k2 && k2 <= (a2 - 1) * k1) return LambdaForm::FormII;
  return LambdaForm::Reject;
}

namespace {

// Growing two-sided window of p^mu.
class PWindow {
 public:
  PWindow(const CartanData& cd, const Weight& mu) : cd_(cd) {
    fwd_.push_back(BigInt(-mu.m2));
    fwd_.push_back(BigInt(mu.m1));
  }
  const BigInt& at(i64 m) {
    if (m >= 0) {
      while (static_cast<i64>(fwd_.size()) <= m) {
        const i64 t = static_cast<i64>(fwd_.size()) - 2;
        fwd_.push_back(p_mult(cd_, t) * fwd_[t + 1] - fwd_[t]);
      }
      return fwd_[m];
    }
    while (static_cast<i64>(bwd_.size()) < -m) {
      const i64 t = -static_cast<i64>(bwd_.size()) - 1;
      bwd_.push_back(p_mult(cd_, t) * at(t + 1) - at(t + 2));
    }
    return bwd_[-m - 1];
  }

 private:
  const CartanData& cd_;
  std::deque<BigInt> fwd_;  // p_0, p_1, ...
  std::deque<BigInt> bwd_;  // p_-1, p_-2, ...
};

constexpr i64 kScanCap = 4096;

}  // namespace

OrbitClass classify_orbit(const CartanData& cd, const Weight& mu) {
  OrbitClass out;
  if (mu.m1 == 0 && mu.m2 == 0) {
    out.witness = Witness{0, mu};
    return out;
  }

  // Short translates first: they either hit +-P+ or reach the quadrant.
  static constexpr i64 kOrder[] = {0, 1, -1, 2, -2, 3, -3, 4, -4};
  bool quadrant = false;
  for (i64 k : kOrder) {
    Weight nu = weyl_translate(cd, mu, k);
    if (nu.is_dominant() || nu.is_antidominant()) {
      out.witness = Witness{k, nu};
      return out;
    }
    if (nu.in_quadrant()) {
      quadrant = true;
      break;
    }
  }
  if (!quadrant) throw std::logic_error("classify_orbit: orbit never reached the quadrant");

  // Condition (A) holds iff every adjacent pair (p_m, p_{m+1}) is nonzero of
  // one sign: otherwise w_m mu is dominant or antidominant.
  PWindow p(cd, mu);
  const int s = sgn(p.at(0));
  auto q = [&](i64 m) -> BigInt { return s > 0 ? p.at(m) : BigInt(-p.at(m)); };
  auto pair_ok = [&](i64 m) { return sgn(p.at(m)) == s && sgn(p.at(m + 1)) == s; };
  auto grows = [&](i64 m) { return q(m + 2) >= q(m) && q(m + 3) >= q(m + 1); };
  auto shrinks = [&](i64 m) { return q(m - 2) >= q(m) && q(m - 1) >= q(m + 1); };

  bool fwd_done = false, bwd_done = false;
  i64 fwd = 0, bwd = -1;
  while (!(fwd_done && bwd_done)) {
    if (fwd > kScanCap || bwd < -kScanCap) throw std::runtime_error("classify_orbit: scan cap exceeded");
    for (int side = 0; side < 2; ++side) {
      const bool forward = side == 0;
      if (forward ? fwd_done : bwd_done) continue;
      const i64 m = forward ? fwd : bwd;
      if (s == 0 || !pair_ok(m)) {
        out.witness = Witness{m, translate_from_pair(m, detail::to_i64(p.at(m)), detail::to_i64(p.at(m + 1)))};
        return out;
      }
      if (forward) {
        const i64 e = m - 5;
        if (e >= 0 && (e & 1) == 0 && grows(e) && grows(e + 2)) fwd_done = true;
        out.scanned_hi = m;
        ++fwd;
      } else {
        const i64 e = m + 4;
        if (e <= 0 && (e & 1) == 0 && shrinks(e) && shrinks(e - 2)) bwd_done = true;
        out.scanned_lo = m;
        --bwd;
      }
    }
  }

  out.satisfies_A = true;
  // Representative: a quadrant translate passing the form check, smallest
  // l first, then smallest |k|.
  std::vector<std::tuple<BigInt, i64, i64>> cands;
  for (i64 m = out.scanned_lo; m <= out.scanned_hi; ++m) {
    const BigInt& pm = p.at(m);
    const BigInt& pm1 = p.at(m + 1);
    const bool quad = (m & 1) ? (pm < 0 && pm1 < 0) : (pm > 0 && pm1 > 0);
    if (!quad) continue;
    cands.emplace_back(abs(pm), std::abs(m), m);
  }
  std::sort(cands.begin(), cands.end());
  for (const auto& [l, absm, m] : cands) {
    (void)l;
    (void)absm;
    if (!p.at(m).fits_slong_p() || !p.at(m + 1).fits_slong_p()) continue;
    Weight nu = translate_from_pair(m, p.at(m).get_si(), p.at(m + 1).get_si());
    if (validate_lambda_form(cd, nu.m1, -nu.m2) != LambdaForm::Reject) {
      out.representative = nu;
      out.representative_k = m;
      break;
    }
  }
  return out;
}

LambdaConfig::LambdaConfig(i64 a1, i64 a2, i64 k1, i64 k2)
    : cd_([&] {
        try {
          return CartanData(a1, a2);
        } catch (const std::invalid_argument& e) {
          throw InvalidConfig(e.what());
        }
      }()),
      k1_(k1),
      k2_(k2),
      case_(LambdaCase::OrbitTranslate),
      alpha_(make_alpha_beta(a1, a2).first),
      beta_(make_alpha_beta(a1, a2).second) {
  if (k1 <= 0 || k2 <= 0) throw InvalidConfig("k1, k2 must be positive");
  if (k1 > 1000000 || k2 > 1000000) throw InvalidConfig("k1, k2 too large");

  p_.resize(2 * kCacheBound + 2);
  const Weight lam = lambda();
  PWindow w(cd_, lam);
  for (i64 m = -kCacheBound; m <= kCacheBound + 1; ++m) p_[m + kCacheBound] = w.at(m);

  switch (validate_lambda_form(cd_, k1, k2)) {
    case LambdaForm::FormI: case_ = LambdaCase::FormI; break;
    case LambdaForm::FormII: case_ = LambdaCase::FormII; break;
    case LambdaForm::A1One: case_ = LambdaCase::A1One; break;
    case LambdaForm::A2One: case_ = LambdaCase::A2One; break;
    case LambdaForm::Reject: {
      // Not in normal form: still usable when its orbit avoids +-P+ and the
      // base inequality gamma0 p0 - p1 >= 0 holds.
      OrbitClass oc = classify_orbit(cd_, lam);
      if (!oc.satisfies_A)
        throw InvalidConfig("lambda's Weyl orbit meets P+ or -P+ (" + label() + ")");
      QuadNum base = alpha_ * QuadNum::integer(p(0), disc()) - QuadNum::integer(p(1), disc());
      if (base.sign() < 0) throw InvalidConfig("gamma0 p0 - p1 < 0 for " + label());
      case_ = LambdaCase::OrbitTranslate;
      break;
    }
  }
  for (const BigInt& v : p_)
    if (v <= 0) throw InvalidConfig("p_m <= 0 inside the cached range for " + label());
}

BigInt LambdaConfig::p(i64 m) const {
  if (m >= -kCacheBound && m <= kCacheBound + 1) return p_[m + kCacheBound];
  if (m > 0) {
    BigInt x = p_[2 * kCacheBound], y = p_[2 * kCacheBound + 1];
    for (i64 t = kCacheBound; t + 2 <= m; ++t) {
      BigInt z = p_mult(cd_, t) * y - x;
      x = std::move(y);
      y = std::move(z);
    }
    return y;
  }
  BigInt x = p_[0], y = p_[1];  // p_{-B}, p_{-B+1}
  for (i64 t = -kCacheBound - 1; t >= m; --t) {
    BigInt z = p_mult(cd_, t) * x - y;
    y = std::move(x);
    x = std::move(z);
  }
  return x;
}

i64 LambdaConfig::p_int(i64 m) const {
  if (m >= -kCacheBound && m <= kCacheBound + 1) return detail::to_i64(p_[m + kCacheBound]);
  return detail::to_i64(p(m));
}

std::string LambdaConfig::label() const {
  return "(" + std::to_string(a1()) + "," + std::to_string(a2()) + "," + std::to_string(k1_) + "," +
         std::to_string(k2_) + ")";
}

nlohmann::ordered_json LambdaConfig::to_json() const {
  return {{"a1", a1()}, {"a2", a2()}, {"k1", k1_}, {"k2", k2_}};
}

LambdaConfig config_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw InvalidConfig("config must be a JSON object");
  for (const char* key : {"a1", "a2", "k1", "k2"})
    if (!j.contains(key) || !j[key].is_number_integer()) throw InvalidConfig(std::string("config needs integer ") + key);
  return LambdaConfig(j["a1"].get<i64>(), j["a2"].get<i64>(), j["k1"].get<i64>(), j["k2"].get<i64>());
}

}  // namespace hypcrystal
