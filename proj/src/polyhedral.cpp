#include "hypcrystal/polyhedral.hpp"

#include <stdexcept>

namespace hypcrystal {

LinFunc::LinFunc(const BigInt& D) : c_(QuadNum::zero(D)) {}

LinFunc::LinFunc(QuadNum constant, std::map<i64, QuadNum> coeffs) : c_(std::move(constant)) {
  for (auto& [k, v] : coeffs) add_term(k, v);
}

LinFunc LinFunc::zeta(i64 k, const BigInt& D) {
  LinFunc f(D);
  f.add_term(k, QuadNum::integer(1, D));
  return f;
}

QuadNum LinFunc::coeff(i64 k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? QuadNum::zero(disc()) : it->second;
}

LinFunc& LinFunc::add_term(i64 k, const QuadNum& v) {
  if (v.disc() != disc()) throw std::invalid_argument("LinFunc: coefficient from another field");
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    if (!v.is_zero()) coeffs_.emplace(k, v);
    return *this;
  }
  it->second += v;
  if (it->second.is_zero()) coeffs_.erase(it);
  return *this;
}

LinFunc& LinFunc::operator+=(const LinFunc& y) {
  c_ += y.c_;
  for (const auto& [k, v] : y.coeffs_) add_term(k, v);
  return *this;
}

LinFunc& LinFunc::operator-=(const LinFunc& y) {
  c_ -= y.c_;
  for (const auto& [k, v] : y.coeffs_) add_term(k, -v);
  return *this;
}

LinFunc operator*(const QuadNum& s, const LinFunc& f) {
  LinFunc out(s * f.c_, {});
  if (s.is_zero()) return out;
  for (const auto& [k, v] : f.coeffs_) out.coeffs_.emplace(k, s * v);
  return out;
}

std::string LinFunc::to_string() const {
  std::string s = c_.to_string();
  for (const auto& [k, v] : coeffs_) s += " + " + v.to_string() + "*z[" + std::to_string(k) + "]";
  return s;
}

nlohmann::ordered_json LinFunc::to_json() const {
  nlohmann::ordered_json co = nlohmann::ordered_json::object();
  for (const auto& [k, v] : coeffs_) co[std::to_string(k)] = v.to_string();
  return {{"const", c_.to_string()}, {"coeffs", co}};
}

QuadNum lin_eval(const LinFunc& phi, const CrystalElt& elt) {
  QuadNum v = phi.constant();
  for (const auto& [k, c] : phi.coeffs()) {
    const i64 x = elt.x(k);
    if (x != 0) v += c * QuadNum::integer(x, phi.disc());
  }
  return v;
}

const char* to_string(XiKind kind) {
  switch (kind) {
    case XiKind::Base0: return "base-0";
    case XiKind::Base1: return "base-1";
    case XiKind::PlusP: return "plus-p";
    case XiKind::PlusG: return "plus-gamma";
    case XiKind::PlusM: return "plus-mix";
    case XiKind::MinusP: return "minus-p";
    case XiKind::MinusG: return "minus-gamma";
    case XiKind::MinusM: return "minus-mix";
  }
  return "?";
}

bool is_plus_family(XiKind kind) {
  return kind == XiKind::PlusP || kind == XiKind::PlusG || kind == XiKind::PlusM;
}

bool is_minus_family(XiKind kind) {
  return kind == XiKind::MinusP || kind == XiKind::MinusG || kind == XiKind::MinusM;
}

std::string XiIndex::to_string() const {
  if (kind == XiKind::Base0 || kind == XiKind::Base1) return hypcrystal::to_string(kind);
  return std::string(hypcrystal::to_string(kind)) + "(" + std::to_string(k) + ")";
}

namespace {

int sign_of(const BigInt& a, const BigInt& b, const BigInt& D) {
  const int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const int c = cmp(BigInt(a * a), BigInt(b * b * D));
  return c > 0 ? sa : sb;
}

}  // namespace

XiFamily::XiFamily(LambdaConfig cfg) : cfg_(std::move(cfg)) {
  base0_ = compile(generator(XiKind::Base0, 0));
  base1_ = compile(generator(XiKind::Base1, 0));
  pre_.reserve(3 * kPre + 3 * (kPre + 1));
  for (XiKind kind : {XiKind::PlusP, XiKind::PlusG, XiKind::PlusM})
    for (i64 k = 1; k <= kPre; ++k) pre_.push_back(compile(generator(kind, k)));
  for (XiKind kind : {XiKind::MinusP, XiKind::MinusG, XiKind::MinusM})
    for (i64 k = 0; k >= -kPre; --k) pre_.push_back(compile(generator(kind, k)));
  ensure_tail(kTailSlack);
}

XiFamily::XiFamily(const XiFamily& other)
    : cfg_(other.cfg_), pre_(other.pre_), base0_(other.base0_), base1_(other.base1_) {
  verified_.store(other.verified_.load());
  tail_ok_.store(other.tail_ok_.load());
}

LinFunc XiFamily::generator(XiKind kind, i64 k) const {
  const BigInt& D = disc();
  auto Q = [&](const BigInt& n) { return QuadNum::integer(n, D); };
  auto one = Q(1);
  if (is_plus_family(kind) && k < 1) throw std::invalid_argument("plus-family generator needs k >= 1");
  if (is_minus_family(kind) && k > 0) throw std::invalid_argument("minus-family generator needs k <= 0");
  switch (kind) {
    case XiKind::Base0: {
      const QuadNum& g0 = cfg_.gamma(0);
      return LinFunc(g0 * Q(cfg_.p(0)), {{0, g0}, {1, -one}});
    }
    case XiKind::Base1: {
      const QuadNum& g1 = cfg_.gamma(1);
      return LinFunc(g1 * Q(cfg_.p(1)), {{0, one}, {1, -g1}});
    }
    case XiKind::PlusP: return LinFunc(Q(cfg_.p(k)), {{k, -one}});
    case XiKind::PlusG: return LinFunc(QuadNum::zero(D), {{k, cfg_.gamma(k)}, {k + 1, -one}});
    case XiKind::PlusM: {
      const QuadNum& g = cfg_.gamma(k + 1);
      return LinFunc(g * Q(cfg_.p(k + 1)) - Q(cfg_.p(k)), {{k, one}, {k + 1, -g}});
    }
    case XiKind::MinusP: return LinFunc(Q(cfg_.p(k)), {{k, one}});
    case XiKind::MinusG: return LinFunc(QuadNum::zero(D), {{k - 1, one}, {k, -cfg_.gamma(k)}});
    case XiKind::MinusM: {
      const QuadNum& g = cfg_.gamma(k - 1);
      return LinFunc(g * Q(cfg_.p(k - 1)) - Q(cfg_.p(k)), {{k - 1, g}, {k, -one}});
    }
  }
  throw std::invalid_argument("unknown generator family");
}

LinFunc xi_generator(const XiFamily& fam, XiKind kind, i64 k) { return fam.generator(kind, k); }

XiFamily::Compiled XiFamily::compile(const LinFunc& f) const {
  BigInt L = f.constant().den();
  for (const auto& [k, v] : f.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), v.den().get_mpz_t());
  Compiled c;
  const BigInt s0 = L / f.constant().den();
  c.a0 = f.constant().a() * s0;
  c.b0 = f.constant().b() * s0;
  for (const auto& [k, v] : f.coeffs()) {
    const BigInt s = L / v.den();
    c.terms.emplace_back(k, v.a() * s, v.b() * s);
  }
  return c;
}

const XiFamily::Compiled& XiFamily::compiled(const XiIndex& idx, Compiled& scratch) const {
  switch (idx.kind) {
    case XiKind::Base0: return base0_;
    case XiKind::Base1: return base1_;
    default: break;
  }
  if (is_plus_family(idx.kind) && idx.k >= 1 && idx.k <= kPre) {
    const i64 fam = static_cast<i64>(idx.kind) - static_cast<i64>(XiKind::PlusP);
    return pre_[fam * kPre + (idx.k - 1)];
  }
  if (is_minus_family(idx.kind) && idx.k <= 0 && idx.k >= -kPre) {
    const i64 fam = static_cast<i64>(idx.kind) - static_cast<i64>(XiKind::MinusP);
    return pre_[3 * kPre + fam * (kPre + 1) + (-idx.k)];
  }
  scratch = compile(generator(idx));
  return scratch;
}

int XiFamily::sign_at(const XiIndex& idx, const CrystalElt& elt) const {
  Compiled scratch;
  const Compiled& c = compiled(idx, scratch);
  BigInt A = c.a0, B = c.b0;
  for (const auto& [k, a, b] : c.terms) {
    const i64 x = elt.x(k);
    if (x == 0) continue;
    A += a * x;
    B += b * x;
  }
  return sign_of(A, B, disc());
}

void XiFamily::ensure_tail(i64 bound) const {
  if (verified_.load() >= bound) return;
  std::lock_guard<std::mutex> lock(tail_mu_);
  const i64 from = verified_.load();
  const BigInt& D = disc();
  for (i64 k = from + 1; k <= bound; ++k) {
    // plus side index k, minus side index 1 - k
    const i64 m = 1 - k;
    const QuadNum plus = cfg_.gamma(k + 1) * QuadNum::integer(cfg_.p(k + 1), D) - QuadNum::integer(cfg_.p(k), D);
    const QuadNum minus = cfg_.gamma(m - 1) * QuadNum::integer(cfg_.p(m - 1), D) - QuadNum::integer(cfg_.p(m), D);
    if (plus.sign() < 0 || minus.sign() < 0 || cfg_.p(k) <= 0 || cfg_.p(m) <= 0) tail_ok_.store(false);
  }
  if (bound > from) verified_.store(bound);
}

std::vector<XiIndex> XiFamily::touched(i64 lo, i64 hi) const {
  std::vector<XiIndex> out{{XiKind::Base0, 0}, {XiKind::Base1, 0}};
  for (i64 k = 1; k <= hi; ++k)
    for (XiKind kind : {XiKind::PlusP, XiKind::PlusG, XiKind::PlusM}) out.push_back({kind, k});
  for (i64 k = 0; k >= lo; --k)
    for (XiKind kind : {XiKind::MinusP, XiKind::MinusG, XiKind::MinusM}) out.push_back({kind, k});
  return out;
}

std::optional<XiIndex> first_violated(const CrystalElt& elt, const XiFamily& fam) {
  if (elt.tag != fam.config().lambda())
    throw std::invalid_argument("sigma_membership: element tag is not lambda");
  fam.ensure_tail(std::max<i64>(elt.hi(), 1 - elt.lo()) + XiFamily::kTailSlack);
  if (!fam.tail_ok()) return XiIndex{XiKind::PlusM, fam.verified_bound()};
  for (const XiIndex& idx : fam.touched(elt.lo(), elt.hi()))
    if (fam.sign_at(idx, elt) < 0) return idx;
  return std::nullopt;
}

bool sigma_membership(const CrystalElt& elt, const XiFamily& fam) { return !first_violated(elt, fam); }

LinFunc beta_bar(const XiFamily& fam, i64 k) {
  const BigInt& D = fam.disc();
  const int ik = color(k);
  QuadNum c = QuadNum::zero(D);
  if (k == -1 || k == 0) c = QuadNum::integer(-fam.config().lambda().pairing(ik), D);
  return LinFunc(c, {{k, QuadNum::integer(1, D)},
                     {k + 1, QuadNum::integer(-fam.config().cartan().a(ik), D)},
                     {k + 2, QuadNum::integer(1, D)}});
}

LinFunc s_bar(const XiFamily& fam, i64 k, const LinFunc& phi) {
  const QuadNum pk = phi.coeff(k);
  if (pk.is_zero()) return phi;
  // phi - phi_k beta_k when phi_k > 0, phi - phi_k beta_{k-2} when phi_k < 0.
  return phi - pk * beta_bar(fam, pk.sign() > 0 ? k : k - 2);
}

namespace {

ConeTerm gen(XiKind kind, i64 k, QuadNum c) {
  return ConeTerm{ConeTerm::Kind::Gen, XiIndex{kind, k}, 0, std::move(c)};
}

}  // namespace

std::vector<ConeTerm> appendix_decomposition(const XiFamily& fam, const XiIndex& g, i64 j) {
  const LambdaConfig& cfg = fam.config();
  const BigInt& D = fam.disc();
  const QuadNum one = QuadNum::integer(1, D);
  const QuadNum& a = cfg.alpha();
  const QuadNum& b = cfg.beta();
  auto gam = [&](i64 k) -> const QuadNum& { return cfg.gamma(k); };
  auto inv = [](const QuadNum& x) { return x.inverse(); };
  const i64 k = g.k;
  auto bad = [&]() -> std::vector<ConeTerm> {
    throw std::invalid_argument("no decomposition for S-bar_" + std::to_string(j) + " of " + g.to_string());
  };
  switch (g.kind) {
    case XiKind::Base0:
      if (j == 0) return {gen(XiKind::PlusG, 1, a)};
      if (j == 1) return {gen(XiKind::MinusM, 0, inv(b))};
      return bad();
    case XiKind::Base1:
      if (j == 0) return {gen(XiKind::PlusM, 1, inv(a))};
      if (j == 1) return {gen(XiKind::MinusG, 0, b)};
      return bad();
    case XiKind::PlusP:
      if (j != k) return bad();
      if (k == 1) return {gen(XiKind::MinusG, 0, one), ConeTerm{ConeTerm::Kind::NegZeta, {}, 0, inv(b)}};
      if (k == 2) return {gen(XiKind::PlusP, 1, inv(a)), gen(XiKind::Base1, 0, one)};
      return {gen(XiKind::PlusP, k - 1, inv(gam(k))), gen(XiKind::PlusM, k - 2, one)};
    case XiKind::PlusG:
      if (j == k) return {gen(XiKind::PlusG, k + 1, gam(k))};
      if (j == k + 1) {
        if (k == 1) return {gen(XiKind::Base0, 0, inv(a))};
        return {gen(XiKind::PlusG, k - 1, inv(gam(k - 1)))};
      }
      return bad();
    case XiKind::PlusM:
      if (j == k) return {gen(XiKind::PlusM, k + 1, inv(gam(k + 2)))};
      if (j == k + 1) {
        if (k == 1) return {gen(XiKind::Base1, 0, a)};
        return {gen(XiKind::PlusM, k - 1, gam(k + 1))};
      }
      return bad();
    case XiKind::MinusP:
      if (j != k) return bad();
      if (k == 0) return {ConeTerm{ConeTerm::Kind::Zeta, {}, 1, inv(a)}, gen(XiKind::PlusG, 1, one)};
      if (k == -1) return {gen(XiKind::MinusP, 0, inv(b)), gen(XiKind::Base0, 0, one)};
      return {gen(XiKind::MinusP, k + 1, inv(gam(k))), gen(XiKind::MinusM, k + 2, one)};
    case XiKind::MinusG:
      if (j == k - 1) {
        if (k == 0) return {gen(XiKind::Base1, 0, inv(b))};
        return {gen(XiKind::MinusG, k + 1, inv(gam(k + 1)))};
      }
      if (j == k) return {gen(XiKind::MinusG, k - 1, gam(k))};
      return bad();
    case XiKind::MinusM:
      if (j == k - 1) {
        if (k == 0) return {gen(XiKind::Base0, 0, b)};
        return {gen(XiKind::MinusM, k + 1, gam(k - 1))};
      }
      if (j == k) return {gen(XiKind::MinusM, k - 1, inv(gam(k - 2)))};
      return bad();
  }
  return bad();
}

AppendixReport verify_appendix_a(const XiFamily& fam, i64 k_range) {
  AppendixReport rep;
  const BigInt& D = fam.disc();
  std::vector<XiIndex> gens{{XiKind::Base0, 0}, {XiKind::Base1, 0}};
  for (i64 k = 1; k <= k_range; ++k)
    for (XiKind kind : {XiKind::PlusP, XiKind::PlusG, XiKind::PlusM}) gens.push_back({kind, k});
  for (i64 k = 0; k >= -k_range; --k)
    for (XiKind kind : {XiKind::MinusP, XiKind::MinusG, XiKind::MinusM}) gens.push_back({kind, k});

  for (const XiIndex& g : gens) {
    const LinFunc phi = fam.generator(g);
    for (const auto& [j, coeff] : phi.coeffs()) {
      (void)coeff;
      ++rep.checked;
      const std::string where = "S-bar_" + std::to_string(j) + "(" + g.to_string() + ")";
      const LinFunc lhs = s_bar(fam, j, phi);
      std::vector<ConeTerm> terms;
      try {
        terms = appendix_decomposition(fam, g, j);
      } catch (const std::exception& e) {
        rep.mismatches.push_back(where + ": " + e.what());
        continue;
      }
      LinFunc rhs(D);
      for (const ConeTerm& t : terms) {
        if (t.coeff.sign() < 0) rep.negative_coefficients.push_back(where + ": coefficient " + t.coeff.to_string());
        switch (t.kind) {
          case ConeTerm::Kind::Gen:
            rhs += t.coeff * fam.generator(t.gen);
            break;
          case ConeTerm::Kind::Zeta:
            if (t.j < 1) rep.mismatches.push_back(where + ": zeta term on the wrong side");
            rhs += t.coeff * LinFunc::zeta(t.j, D);
            break;
          case ConeTerm::Kind::NegZeta:
            if (t.j > 0) rep.mismatches.push_back(where + ": -zeta term on the wrong side");
            rhs -= t.coeff * LinFunc::zeta(t.j, D);
            break;
        }
      }
      if (!(lhs == rhs)) rep.mismatches.push_back(where + ": got " + lhs.to_string() + ", expected " + rhs.to_string());
    }
  }
  return rep;
}

}  // namespace hypcrystal
