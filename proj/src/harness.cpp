#include "hypcrystal/harness.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hypcrystal {

using json = nlohmann::ordered_json;

void EnumConfig::validate() const {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (depth > 20) throw std::invalid_argument("depth > 20 is refused (exponential growth)");
  if (support < 0) throw std::invalid_argument("support must be >= 0");
  if (max_coord < 0) throw std::invalid_argument("max_coord must be >= 0");
  if (weyl_depth < 0) throw std::invalid_argument("weyl_depth must be >= 0");
}

json EnumConfig::params_json() const {
  return {{"K", weyl_depth}, {"depth", depth}, {"support", support}, {"max_coord", max_coord}};
}

json SuiteReport::to_json() const {
  json j = {{"suite", suite}, {"config", config}, {"verified", verified}, {"witnesses", witnesses}, {"params", params}};
  if (!summary.empty()) j["summary"] = summary;
  return j;
}

// ---------------------------------------------------------------- BFS

Graph bfs_enumerate(const EnumConfig& ec, const XiFamily& fam) {
  ec.validate();
  const CartanData& cd = ec.cfg.cartan();
  Graph g;
  std::map<CrystalElt, std::size_t> index;
  std::set<std::tuple<std::size_t, int, std::size_t>> seen;

  auto add_node = [&](const CrystalElt& e, i64 d) -> bool {
    if (auto bad = first_violated(e, fam)) {
      g.violation = e;
      g.violated = bad->to_string();
      return false;
    }
    index.emplace(e, g.nodes.size());
    g.nodes.push_back(e);
    g.depth.push_back(d);
    return true;
  };

  if (!add_node(CrystalElt::highest(ec.cfg.lambda()), 0)) return g;
  for (std::size_t head = 0; head < g.nodes.size(); ++head) {
    if (g.depth[head] >= ec.depth) continue;
    const CrystalElt u = g.nodes[head];
    for (int i : {1, 2}) {
      for (Dir d : {Dir::F, Dir::E}) {
        auto r = d == Dir::F ? apply_f(cd, u, i) : apply_e(cd, u, i);
        if (!r) continue;
        std::size_t v;
        auto it = index.find(*r);
        if (it == index.end()) {
          v = g.nodes.size();
          if (!add_node(*r, g.depth[head] + 1)) return g;
        } else {
          v = it->second;
        }
        auto key = d == Dir::F ? std::make_tuple(head, i, v) : std::make_tuple(v, i, head);
        if (seen.insert(key).second) g.edges.push_back({head, i, v, d});
      }
    }
  }
  return g;
}

Graph bfs_enumerate(const EnumConfig& ec) { return bfs_enumerate(ec, XiFamily(ec.cfg)); }

// ---------------------------------------------------------------- boxes

std::vector<CrystalElt> box_enumerate_sigma(const EnumConfig& ec, const XiFamily& fam) {
  ec.validate();
  const i64 S = ec.support, M = ec.max_coord;
  std::vector<i64> order;
  for (i64 k = 1; k <= S; ++k) order.push_back(k);
  for (i64 k = 0; k >= -S; --k) order.push_back(k);
  std::map<i64, std::size_t> pos;
  for (std::size_t t = 0; t < order.size(); ++t) pos[order[t]] = t;

  CrystalElt cur = CrystalElt::highest(ec.cfg.lambda());
  std::vector<CrystalElt> out;
  fam.ensure_tail(S + XiFamily::kTailSlack);
  if (!fam.tail_ok()) return out;

  // Each generator is checked once the last box index of its support is set.
  std::vector<std::vector<XiIndex>> ready(order.size());
  std::vector<XiIndex> constant;
  for (const XiIndex& idx : fam.touched(-S, S)) {
    std::optional<std::size_t> last;
    const LinFunc gen = fam.generator(idx);
    for (const auto& [k, c] : gen.coeffs()) {
      (void)c;
      auto it = pos.find(k);
      if (it != pos.end()) last = std::max(last.value_or(0), it->second);
    }
    if (last)
      ready[*last].push_back(idx);
    else
      constant.push_back(idx);
  }
  for (const XiIndex& idx : constant)
    if (fam.sign_at(idx, cur) < 0) return out;

  auto rec = [&](auto&& self, std::size_t t) -> void {
    if (t == order.size()) {
      out.push_back(cur);
      return;
    }
    const i64 k = order[t];
    for (i64 v = 0; v <= M; ++v) {
      if (k >= 1)
        cur.plus.set(k, v);
      else
        cur.minus.set(k, -v);
      bool ok = true;
      for (const XiIndex& idx : ready[t])
        if (fam.sign_at(idx, cur) < 0) {
          ok = false;
          break;
        }
      if (ok) self(self, t + 1);
    }
    if (k >= 1)
      cur.plus.set(k, 0);
    else
      cur.minus.set(k, 0);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CrystalElt> box_enumerate_sigma(const EnumConfig& ec) { return box_enumerate_sigma(ec, XiFamily(ec.cfg)); }

namespace {

template <class Vec>
void all_parts(i64 lo, i64 hi, i64 M, int sign, const CartanData& cd, const std::vector<i64>& cap,
               std::vector<Vec>& out) {
  Vec cur;
  std::vector<i64> idx;
  for (i64 k = lo; k <= hi; ++k) idx.push_back(k);
  auto rec = [&](auto&& self, std::size_t t) -> void {
    if (t == idx.size()) {
      if (img_membership(cur, cd)) out.push_back(cur);
      return;
    }
    const i64 bound = cap.empty() ? M : std::min(M, cap[t]);
    for (i64 v = 0; v <= bound; ++v) {
      cur.set(idx[t], sign * v);
      self(self, t + 1);
    }
    cur.set(idx[t], 0);
  };
  rec(rec, 0);
}

}  // namespace

std::vector<CrystalElt> box_enumerate_img(const EnumConfig& ec) {
  ec.validate();
  const CartanData& cd = ec.cfg.cartan();
  std::vector<PlusVec> plus;
  std::vector<MinusVec> minus;
  all_parts<PlusVec>(1, ec.support, ec.max_coord, 1, cd, {}, plus);
  all_parts<MinusVec>(-ec.support, 0, ec.max_coord, -1, cd, {}, minus);
  std::vector<CrystalElt> out;
  for (const auto& p : plus)
    for (const auto& m : minus) out.push_back({p, ec.cfg.lambda(), m});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PlusVec> box_plus_below_p(const EnumConfig& ec) {
  ec.validate();
  std::vector<i64> cap;
  for (i64 k = 1; k <= ec.support; ++k) cap.push_back(ec.cfg.p_int(k));
  std::vector<PlusVec> out;
  all_parts<PlusVec>(1, ec.support, ec.max_coord, 1, ec.cfg.cartan(), cap, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- suites

namespace {

json elt_json(const CrystalElt& e) { return to_json(e); }

SuiteReport new_report(const std::string& name, const LambdaConfig& cfg) {
  SuiteReport r;
  r.suite = name;
  r.config = cfg.to_json();
  return r;
}

}  // namespace

SuiteReport verify_closure(const EnumConfig& bfs, const EnumConfig& box) {
  SuiteReport r = new_report("closure", bfs.cfg);
  r.params = {{"K", nullptr}, {"depth", bfs.depth}, {"support", box.support}, {"max_coord", box.max_coord}};
  const XiFamily fam(bfs.cfg);
  const CartanData& cd = bfs.cfg.cartan();

  Graph g = bfs_enumerate(bfs, fam);
  if (g.violation) r.witness({{"check", "bfs_membership"}, {"element", elt_json(*g.violation)}, {"generator", g.violated}});

  const auto elems = box_enumerate_sigma(box, fam);
  i64 images = 0;
  for (const CrystalElt& x : elems) {
    if (!img_membership(x, cd)) r.witness({{"check", "containment"}, {"element", elt_json(x)}});
    for (int i : {1, 2}) {
      for (Dir d : {Dir::F, Dir::E}) {
        auto y = d == Dir::F ? apply_f(cd, x, i) : apply_e(cd, x, i);
        if (!y) continue;
        ++images;
        if (auto bad = first_violated(*y, fam))
          r.witness({{"check", "operator_closure"},
                     {"element", elt_json(x)},
                     {"op", std::string(d == Dir::F ? "f" : "e") + std::to_string(i)},
                     {"image", elt_json(*y)},
                     {"generator", bad->to_string()}});
      }
    }
  }
  r.summary = {{"bfs_nodes", g.nodes.size()}, {"bfs_edges", g.edges.size()}, {"box_elements", elems.size()},
               {"images_checked", images}};
  return r;
}

SuiteReport verify_containment(const EnumConfig& ec) {
  SuiteReport r = new_report("containment", ec.cfg);
  r.params = {{"K", nullptr}, {"depth", nullptr}, {"support", ec.support}, {"max_coord", ec.max_coord}};
  const auto elems = box_enumerate_sigma(ec);
  for (const CrystalElt& x : elems)
    if (!img_membership(x, ec.cfg.cartan())) r.witness({{"check", "containment"}, {"element", elt_json(x)}});
  r.summary = {{"box_elements", elems.size()}};
  return r;
}

SuiteReport verify_appendix_suite(const LambdaConfig& cfg, i64 k_range) {
  SuiteReport r = new_report("appendix-a", cfg);
  r.params = {{"k_range", k_range}};
  const AppendixReport rep = verify_appendix_a(XiFamily(cfg), k_range);
  for (const auto& m : rep.mismatches) r.witness({{"check", "identity"}, {"detail", m}});
  for (const auto& m : rep.negative_coefficients) r.witness({{"check", "coefficient_sign"}, {"detail", m}});
  r.summary = {{"identities_checked", rep.checked}};
  return r;
}

SuiteReport verify_extremal_sigma_prime(const EnumConfig& ec, i64 closed_form_k) {
  SuiteReport r = new_report("extremal", ec.cfg);
  r.params = {{"K", ec.weyl_depth}, {"depth", ec.depth}, {"closed_form_k", closed_form_k}};
  const XiFamily fam(ec.cfg);
  const CartanData& cd = ec.cfg.cartan();
  const Graph g = bfs_enumerate(ec, fam);
  if (g.violation) r.witness({{"check", "bfs_membership"}, {"element", elt_json(*g.violation)}});
  i64 tested = 0;
  for (const CrystalElt& x : g.nodes) {
    if (!x.minus.empty()) continue;
    ++tested;
    try {
      const CrystalElt xs = star_full(x, cd);
      const ExtremalReport er = extremal_report(cd, xs, ec.weyl_depth, true);
      if (!er.extremal) {
        const auto& v = er.violations.front();
        r.witness({{"check", "extremal"}, {"element", elt_json(x)}, {"k", v.k}, {"i", v.i}, {"kind", v.kind}});
      }
      for (i64 k = -closed_form_k; k <= closed_form_k; ++k)
        if (!sw_closed_form_check(fam, x, k)) r.witness({{"check", "closed_form"}, {"element", elt_json(x)}, {"k", k}});
      WeylWalk walk(cd, xs);
      for (i64 k = -ec.weyl_depth; k <= ec.weyl_depth; ++k) {
        const CrystalElt& b = walk.at(k);
        if (eps_phi(cd, b, color(k)).eps != 0)
          r.witness({{"check", "eps_i_k"}, {"element", elt_json(x)}, {"k", k}});
        if (eps_phi(cd, b, color(k + 1)).phi != 0)
          r.witness({{"check", "phi_i_k+1"}, {"element", elt_json(x)}, {"k", k}});
        if (x.plus.empty()) {
          const Weight w = weight(cd, b);
          if (w.pairing(color(k)) != ec.cfg.p_int(k) || w.pairing(color(k + 1)) != -ec.cfg.p_int(k + 1))
            r.witness({{"check", "pairing_along_walk"}, {"k", k}, {"weight", to_json(w)}});
        }
      }
    } catch (const std::exception& e) {
      r.witness({{"check", "exception"}, {"element", elt_json(x)}, {"what", e.what()}});
    }
  }
  r.summary = {{"sigma_prime_elements", tested}};
  return r;
}

SuiteReport verify_equality(const EnumConfig& ec, const std::vector<i64>& ks) {
  SuiteReport r = new_report("equality", ec.cfg);
  json kl = json::array();
  for (i64 k : ks) kl.push_back(k);
  r.params = {{"K", kl}, {"depth", nullptr}, {"support", ec.support}, {"max_coord", ec.max_coord}};
  const CartanData& cd = ec.cfg.cartan();
  const auto A = box_enumerate_sigma(ec);
  const std::set<CrystalElt> Aset(A.begin(), A.end());
  std::vector<CrystalElt> B = box_enumerate_img(ec);
  const std::size_t img_count = B.size();
  std::optional<i64> achieving;
  json per_k = json::array();
  std::vector<CrystalElt> a_minus_b, b_minus_a;
  for (i64 K : ks) {
    std::vector<CrystalElt> next;
    for (const CrystalElt& x : B) {
      try {
        if (is_extremal(cd, star_full(x, cd), K)) next.push_back(x);
      } catch (const std::exception& e) {
        r.witness({{"check", "exception"}, {"element", elt_json(x)}, {"K", K}, {"what", e.what()}});
      }
    }
    B = std::move(next);
    a_minus_b.clear();
    b_minus_a.clear();
    const std::set<CrystalElt> Bset(B.begin(), B.end());
    std::set_difference(Aset.begin(), Aset.end(), Bset.begin(), Bset.end(), std::back_inserter(a_minus_b));
    std::set_difference(Bset.begin(), Bset.end(), Aset.begin(), Aset.end(), std::back_inserter(b_minus_a));
    per_k.push_back({{"K", K}, {"B", B.size()}, {"A_minus_B", a_minus_b.size()}, {"B_minus_A", b_minus_a.size()}});
    if (a_minus_b.empty() && b_minus_a.empty()) {
      achieving = K;
      break;
    }
    if (!a_minus_b.empty()) break;  // B only shrinks with K
  }
  if (!achieving) {
    for (const auto& x : a_minus_b) r.witness({{"check", "in_A_not_B"}, {"element", elt_json(x)}});
    for (const auto& x : b_minus_a) r.witness({{"check", "in_B_not_A"}, {"element", elt_json(x)}});
    if (a_minus_b.empty() && b_minus_a.empty()) r.witness({{"check", "no_K_achieved_equality"}});
  }
  r.summary = {{"A", A.size()}, {"img_box", img_count}, {"per_K", per_k},
               {"achieving_K", achieving ? json(*achieving) : json(nullptr)}};
  return r;
}

std::optional<std::pair<i64, Weight>> brute_translate_in_form(const CartanData& cd, const Weight& mu, i64 bound) {
  auto passes = [&](const Weight& w) {
    return w.in_quadrant() && validate_lambda_form(cd, w.m1, -w.m2) != LambdaForm::Reject;
  };
  if (passes(mu)) return std::make_pair(i64{0}, mu);
  Weight up = mu, down = mu;
  for (i64 k = 1; k <= bound; ++k) {
    up = cd.reflect(up, color(k));          // w_k = s_{i_k} w_{k-1}
    down = cd.reflect(down, color(-k + 1));  // w_{-k} = s_{i_{-k+1}} w_{-k+1}
    if (passes(up)) return std::make_pair(k, up);
    if (passes(down)) return std::make_pair(-k, down);
  }
  return std::nullopt;
}

SuiteReport verify_classification(const std::vector<std::pair<i64, i64>>& cartans, i64 kmax, i64 brute_k) {
  SuiteReport r;
  r.suite = "classify";
  r.config = json::array();
  for (const auto& [a1, a2] : cartans) r.config.push_back({{"a1", a1}, {"a2", a2}});
  r.params = {{"kmax", kmax}, {"brute_k", brute_k}};
  i64 checked = 0, admissible = 0;
  for (const auto& [a1, a2] : cartans) {
    const CartanData cd(a1, a2);
    for (i64 k1 = 1; k1 <= kmax; ++k1)
      for (i64 k2 = 1; k2 <= kmax; ++k2) {
        const Weight mu{k1, -k2};
        ++checked;
        OrbitClass oc;
        try {
          oc = classify_orbit(cd, mu);
        } catch (const std::exception& e) {
          r.witness({{"check", "exception"}, {"a1", a1}, {"a2", a2}, {"mu", to_json(mu)}, {"what", e.what()}});
          continue;
        }
        const auto brute = brute_translate_in_form(cd, mu, brute_k);
        if (oc.satisfies_A) ++admissible;
        if (oc.satisfies_A != brute.has_value()) {
          r.witness({{"check", "disagreement"}, {"a1", a1}, {"a2", a2}, {"mu", to_json(mu)},
                     {"classify", oc.satisfies_A}, {"brute", brute.has_value()}});
          continue;
        }
        if (oc.satisfies_A) {
          if (!oc.representative) {
            r.witness({{"check", "no_representative"}, {"a1", a1}, {"a2", a2}, {"mu", to_json(mu)}});
          } else if (weyl_translate(cd, mu, *oc.representative_k) != *oc.representative ||
                     validate_lambda_form(cd, oc.representative->m1, -oc.representative->m2) == LambdaForm::Reject) {
            r.witness({{"check", "bad_representative"}, {"a1", a1}, {"a2", a2}, {"mu", to_json(mu)},
                       {"representative", to_json(*oc.representative)}});
          }
        } else {
          if (!oc.witness) {
            r.witness({{"check", "no_witness"}, {"a1", a1}, {"a2", a2}, {"mu", to_json(mu)}});
          } else {
            const Weight w = oc.witness->weight;
            Weight direct = mu;
            for (int i : WeylWord{oc.witness->k}.application_order()) direct = cd.reflect(direct, i);
            if (direct != w || !(w.is_dominant() || w.is_antidominant()))
              r.witness({{"check", "bad_witness"}, {"a1", a1}, {"a2", a2}, {"mu", to_json(mu)}, {"k", oc.witness->k}});
          }
        }
      }
  }
  // The known short-orbit example.
  {
    const CartanData cd(3, 3);
    const OrbitClass oc = classify_orbit(cd, {1, -3});
    if (oc.satisfies_A || !oc.witness || oc.witness->k != 1 || oc.witness->weight != Weight{-1, 0})
      r.witness({{"check", "known_witness"}, {"mu", to_json(Weight{1, -3})}});
  }
  r.summary = {{"weights_checked", checked}, {"admissible", admissible}};
  return r;
}

SuiteReport verify_sequences(const LambdaConfig& cfg, i64 jmax) {
  SuiteReport r = new_report("sequences", cfg);
  r.params = {{"jmax", jmax}};
  const CartanData& cd = cfg.cartan();
  const BigInt& D = cfg.disc();
  // Chain towards alpha uses c at even j and c' at odd j; the chain towards
  // beta swaps them.
  for (int chain = 0; chain < 2; ++chain) {
    const QuadNum& limit = chain == 0 ? cfg.alpha() : cfg.beta();
    // term j is num(j) / den(j), both from the sequence selected by j
    auto num = [&](i64 j) -> const BigInt& { return cd.c(j, ((j & 1) == 0) == (chain == 1)); };
    auto den = [&](i64 j) -> const BigInt& { return cd.c(j - 1, ((j & 1) == 0) == (chain == 1)); };
    for (i64 j = 2; j <= jmax; ++j) {
      const QuadNum gap = QuadNum::integer(num(j), D) - limit * QuadNum::integer(den(j), D);
      if (gap.sign() <= 0) r.witness({{"check", "ratio_above_limit"}, {"chain", chain}, {"j", j}});
      if (j + 1 <= jmax && !(num(j) * den(j + 1) > num(j + 1) * den(j)))
        r.witness({{"check", "strictly_decreasing"}, {"chain", chain}, {"j", j}});
    }
  }
  for (i64 j = 1; j <= jmax; ++j)
    if (cd.c(j) <= 0 || cd.c(j, true) <= 0) r.witness({{"check", "c_positive"}, {"j", j}});
  for (i64 k = 1; k <= 40; ++k) {
    const QuadNum plus = cfg.gamma(k + 1) * QuadNum::integer(cfg.p(k + 1), D) - QuadNum::integer(cfg.p(k), D);
    const QuadNum minus = cfg.gamma(-k) * QuadNum::integer(cfg.p(-k), D) - QuadNum::integer(cfg.p(1 - k), D);
    if (plus.sign() < 0) r.witness({{"check", "tail_plus"}, {"k", k}});
    if (minus.sign() < 0) r.witness({{"check", "tail_minus"}, {"k", 1 - k}});
  }
  for (i64 m = -40; m <= 40; ++m)
    if (cfg.p(m) <= 0) r.witness({{"check", "p_positive"}, {"m", m}});
  const QuadNum base = cfg.alpha() * QuadNum::integer(cfg.p(0), D) - QuadNum::integer(cfg.p(1), D);
  if (base.sign() < 0) r.witness({{"check", "base_inequality"}});
  r.summary = {{"ratio_terms", 2 * (jmax - 1)}, {"tail_constants", 80}};
  return r;
}

SuiteReport verify_axioms(const EnumConfig& ec) {
  SuiteReport r = new_report("axioms", ec.cfg);
  r.params = {{"K", nullptr}, {"depth", ec.depth}};
  const CartanData& cd = ec.cfg.cartan();
  const Graph g = bfs_enumerate(ec);
  if (g.violation) r.witness({{"check", "bfs_membership"}, {"element", elt_json(*g.violation)}});
  i64 checks = 0;
  for (const CrystalElt& x : g.nodes) {
    const Weight wx = weight(cd, x);
    auto fail = [&](const char* what, int i) { r.witness({{"check", what}, {"i", i}, {"element", elt_json(x)}}); };
    for (int i : {1, 2}) {
      ++checks;
      const EpsPhi ep = eps_phi(cd, x, i);
      // epsilon straight from the sigma_k definition over a generous window
      i64 direct = std::numeric_limits<i64>::min();
      for (i64 k = x.lo() - 4; k <= x.hi() + 4; ++k)
        if (color(k) == i) direct = std::max(direct, sigma_k(cd, x, k));
      if (direct != ep.eps) fail("eps_from_sigma", i);
      if (ep.phi != ep.eps + wx.pairing(i)) fail("phi_eps_weight", i);
      if (ep.eps < 0 || ep.phi < 0) fail("eps_phi_nonnegative", i);
      if (auto f = apply_f(cd, x, i)) {
        auto back = apply_e(cd, *f, i);
        if (!back || *back != x) fail("e_after_f", i);
        if (weight(cd, *f) != wx - cd.simple_root(i)) fail("wt_f", i);
        const EpsPhi fp = eps_phi(cd, *f, i);
        if (fp.eps != ep.eps + 1 || fp.phi != ep.phi - 1) fail("eps_phi_f", i);
      } else if (ep.phi != 0) {
        fail("f_null_with_phi_positive", i);
      }
      if (auto e = apply_e(cd, x, i)) {
        auto back = apply_f(cd, *e, i);
        if (!back || *back != x) fail("f_after_e", i);
        if (weight(cd, *e) != wx + cd.simple_root(i)) fail("wt_e", i);
      } else if (ep.eps != 0) {
        fail("e_null_with_eps_positive", i);
      }
    }
    try {
      if (!img_membership(x, cd)) fail("img_membership", 0);
      if (star_plus(star_plus(x.plus, cd), cd) != x.plus) fail("star_plus_involution", 0);
      if (star_minus(star_minus(x.minus, cd), cd) != x.minus) fail("star_minus_involution", 0);
      const CrystalElt xs = star_full(x, cd);
      if (weight(cd, xs) != -x.tag) fail("star_full_weight", 0);
      if (star_full(xs, cd) != x) fail("star_full_involution", 0);
    } catch (const std::exception& e) {
      r.witness({{"check", "exception"}, {"element", elt_json(x)}, {"what", e.what()}});
    }
  }
  r.summary = {{"elements", g.nodes.size()}, {"operator_checks", checks}};
  return r;
}

SuiteReport verify_ippin(const EnumConfig& ec, i64 L, i64 L_max, i64 eps_l_max) {
  SuiteReport r = new_report("ippin", ec.cfg);
  r.params = {{"L", L}, {"L_max", L_max}, {"support", ec.support}, {"max_coord", ec.max_coord}, {"eps_l_max", eps_l_max}};
  const LambdaConfig& cfg = ec.cfg;
  const CartanData& cd = cfg.cartan();
  const BigInt& D = cfg.disc();
  auto Q = [&](const BigInt& v) { return QuadNum::integer(v, D); };
  auto c = [&](i64 j) { return c_seq(cd, SeqKind::C, j); };
  auto cp = [&](i64 j) { return c_seq(cd, SeqKind::CPrime, j); };
  const std::vector<PlusVec> xs = box_plus_below_p(ec);
  i64 implications = 0, resolved = 0;
  for (const PlusVec& x : xs) {
    const i64 hi = x.hi();
    auto X = [&](i64 k) { return BigInt(x.get(k)); };
    auto xj = [&](const char* what, i64 l, json extra = json::object()) {
      json w = {{"check", what}, {"x", to_json(CrystalElt{x, cfg.lambda(), {}})["plus"]}, {"l", l}};
      for (auto& [k, v] : extra.items()) w[k] = v;
      r.witness(w);
    };
    const PlusVec xstar = star_plus(x, cd);
    for (i64 l = 1; l <= L; ++l) {
      // z1 = (..., x2, x1, p0, ..., p_{-2l+1}) as a plus vector
      PlusVec z1;
      for (i64 j = 1; j <= 2 * l; ++j) z1.set(j, cfg.p_int(j - 2 * l));
      for (i64 j = 1; j <= hi; ++j) z1.set(j + 2 * l, x.get(j));
      const bool one = img_membership(z1, cd);
      bool two = true;
      for (i64 j = 2 * l + 1; j <= 2 * l + hi; ++j)
        if (c(j) * X(j - 2 * l) - c(j - 1) * X(j - 2 * l + 1) < 0) two = false;
      if (one != two) xj("z1_membership_vs_inequalities", l);
      if (l <= eps_l_max) {
        bool three = true;
        PlusVec b = xstar;
        for (i64 j = 0; j >= -2 * l + 1; --j) {
          if (j < 0)
            for (i64 t = 0; t < cfg.p_int(j + 1); ++t) b = plus_lattice::apply_f(cd, b, color(j + 1));
          if (plus_lattice::eps_phi(cd, b, color(j)).eps != 0) three = false;
        }
        if (one != three) xj("z1_membership_vs_eps", l);
      }
      // z2 = (x_{2l} - p_{2l}, ..., x1 - p1, 0, ...) as a minus vector
      MinusVec z2;
      for (i64 j = -2 * l + 1; j <= 0; ++j) z2.set(j, x.get(j + 2 * l) - cfg.p_int(j + 2 * l));
      const bool one2 = img_membership(z2, cd);
      bool two2 = true;
      for (i64 j = -2 * l + 2; j <= -1; ++j)
        if (cp(1 - j) * BigInt(z2.get(j)) - cp(-j) * BigInt(z2.get(j - 1)) > 0) two2 = false;
      if (one2 != two2) xj("z2_membership_vs_inequalities", l);
      if (l <= eps_l_max) {
        bool three2 = true;
        MinusVec b;
        for (i64 j = 1; j <= 2 * l; ++j) {
          if (j > 1)
            for (i64 t = 0; t < cfg.p_int(j - 1) - x.get(j - 1); ++t) b = minus_lattice::apply_e(cd, b, color(j - 1));
          if (minus_lattice::eps_phi(cd, b, color(j)).phi != 0) three2 = false;
        }
        if (one2 != three2) xj("z2_membership_vs_phi", l);
      }
    }
    for (i64 k = 1; k <= ec.support + 1; ++k) {
      // gamma_k x_k - x_{k+1} >= 0  <=>  c_{k+2l} x_k - c_{k+2l-1} x_{k+1} >= 0 for all l
      const int g1 = (cfg.gamma(k) * Q(X(k)) - Q(X(k + 1))).sign();
      auto ineq1 = [&](i64 l) { return c(k + 2 * l) * X(k) - c(k + 2 * l - 1) * X(k + 1) >= 0; };
      if (g1 >= 0) {
        ++implications;
        for (i64 l = 1; l <= L; ++l)
          if (!ineq1(l)) xj("cxga1_implication", l, {{"k", k}});
      } else {
        std::optional<i64> found;
        for (i64 l = 1; l <= L_max && !found; ++l)
          if (!ineq1(l)) found = l;
        if (found)
          ++resolved;
        else
          xj("cxga1_unresolved", L_max, {{"k", k}});
      }
      // gamma_{k+1} p_{k+1} - p_k + x_k - gamma_{k+1} x_{k+1} >= 0  <=>
      // c'_{2l+i_k} (x_{k+1} - p_{k+1}) - c'_{2l+i_k-1} (x_k - p_k) <= 0 for all l
      const QuadNum& g = cfg.gamma(k + 1);
      const int g2 = (g * Q(cfg.p(k + 1)) - Q(cfg.p(k)) + Q(X(k)) - g * Q(X(k + 1))).sign();
      const i64 ik = color(k);
      auto ineq2 = [&](i64 l) {
        return cp(2 * l + ik) * (X(k + 1) - cfg.p(k + 1)) - cp(2 * l + ik - 1) * (X(k) - cfg.p(k)) <= 0;
      };
      if (g2 >= 0) {
        ++implications;
        for (i64 l = 1; l <= L; ++l)
          if (!ineq2(l)) xj("cxga2_implication", l, {{"k", k}});
      } else {
        std::optional<i64> found;
        for (i64 l = 1; l <= L_max && !found; ++l)
          if (!ineq2(l)) found = l;
        if (found)
          ++resolved;
        else
          xj("cxga2_unresolved", L_max, {{"k", k}});
      }
    }
  }
  r.summary = {{"xhat_count", xs.size()}, {"implications_checked", implications}, {"violations_resolved", resolved}};
  return r;
}

// ---------------------------------------------------------------- export

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

// f-oriented (from, i, to) triples.
std::vector<std::tuple<std::size_t, int, std::size_t>> f_edges(const Graph& g) {
  std::vector<std::tuple<std::size_t, int, std::size_t>> out;
  for (const Edge& e : g.edges) out.emplace_back(e.dir == Dir::F ? e.src : e.dst, e.i, e.dir == Dir::F ? e.dst : e.src);
  return out;
}

}  // namespace

std::string export_graph(const Graph& g, GraphFormat format) {
  if (format == GraphFormat::Dot) {
    std::string s = "digraph crystal {\n";
    for (const CrystalElt& n : g.nodes) s += "  " + dot_quote(to_json_string(n)) + ";\n";
    for (const auto& [a, i, b] : f_edges(g))
      s += "  " + dot_quote(to_json_string(g.nodes[a])) + " -> " + dot_quote(to_json_string(g.nodes[b])) +
           " [label=\"" + std::to_string(i) + "\", color=" + (i == 1 ? "red" : "blue") + "];\n";
    return s + "}\n";
  }
  json nodes = json::array(), edges = json::array();
  for (const CrystalElt& n : g.nodes) nodes.push_back(to_json(n));
  for (const auto& [a, i, b] : f_edges(g)) edges.push_back({{"src", a}, {"i", i}, {"dst", b}});
  return json{{"nodes", nodes}, {"edges", edges}}.dump(2) + "\n";
}

void export_graph(const Graph& g, GraphFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << export_graph(g, format);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::vector<CrystalElt> graph_nodes_from_json(const std::string& text) {
  const json j = json::parse(text);
  std::vector<CrystalElt> out;
  for (const auto& n : j.at("nodes")) out.push_back(element_from_json(n));
  return out;
}

// ---------------------------------------------------------------- config

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap m;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("config JSON: ") + e.what());
    }
    for (auto& [k, v] : j.items()) m[k] = v;
    return m;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (line.front() == '[') continue;  // table headers carry no meaning here
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    try {
      m[key] = json::parse(val);
    } catch (const json::parse_error&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value '" + val + "'");
    }
  }
  return m;
}

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void SuiteOptions::apply(const ConfigMap& m) {
  auto get = [&](std::initializer_list<const char*> names) -> std::optional<i64> {
    for (const char* n : names) {
      auto it = m.find(n);
      if (it == m.end()) continue;
      if (!it->second.is_number_integer()) throw std::invalid_argument(std::string("config key ") + n + " must be an integer");
      return it->second.get<i64>();
    }
    return std::nullopt;
  };
  auto a1 = get({"a1"}), a2 = get({"a2"}), k1 = get({"k1"}), k2 = get({"k2"});
  if (a1 || a2 || k1 || k2) {
    auto pick = [&](std::optional<i64> v, i64 (LambdaConfig::*f)() const) -> i64 {
      if (v) return *v;
      if (cfg) return ((*cfg).*f)();
      throw InvalidConfig("config needs all of a1, a2, k1, k2");
    };
    cfg = LambdaConfig(pick(a1, &LambdaConfig::a1), pick(a2, &LambdaConfig::a2), pick(k1, &LambdaConfig::k1),
                       pick(k2, &LambdaConfig::k2));
  }
  if (auto v = get({"depth"})) depth = v;
  if (auto v = get({"support"})) support = v;
  if (auto v = get({"max_coord", "max-coord"})) max_coord = v;
  if (auto v = get({"weyl_depth", "weyl-depth", "K"})) weyl_depth = v;
  if (auto v = get({"L"})) L = v;
  if (auto v = get({"L_max", "L-max"})) L_max = v;
  if (auto v = get({"k_range", "k-range"})) k_range = v;
  if (auto v = get({"kmax"})) kmax = v;
  if (auto v = get({"jmax"})) jmax = v;
  if (auto it = m.find("cartans"); it != m.end()) {
    cartans.clear();
    if (!it->second.is_array()) throw std::invalid_argument("cartans must be an array of [a1, a2] pairs");
    for (const auto& p : it->second) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
        throw std::invalid_argument("cartans must be an array of [a1, a2] pairs");
      cartans.emplace_back(p[0].get<i64>(), p[1].get<i64>());
    }
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"closure", "containment", "appendix-a", "extremal", "equality",
                                              "classify", "sequences", "axioms", "ippin"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  auto need_cfg = [&]() -> const LambdaConfig& {
    if (!o.cfg) throw InvalidConfig("suite " + name + " needs a1, a2, k1, k2");
    return *o.cfg;
  };
  auto ec = [&](i64 depth, i64 support, i64 max_coord, i64 K) {
    EnumConfig e{need_cfg(), o.depth.value_or(depth), o.support.value_or(support), o.max_coord.value_or(max_coord),
                 o.weyl_depth.value_or(K)};
    e.validate();
    return e;
  };
  if (name == "closure") {
    EnumConfig bfs = ec(8, 3, 4, 0);
    return verify_closure(bfs, bfs);
  }
  if (name == "containment") return verify_containment(ec(0, 3, 4, 0));
  if (name == "appendix-a") return verify_appendix_suite(need_cfg(), o.k_range.value_or(12));
  if (name == "extremal") {
    EnumConfig e = ec(6, 0, 0, 8);
    return verify_extremal_sigma_prime(e, o.k_range.value_or(std::min<i64>(6, e.weyl_depth)));
  }
  if (name == "equality") {
    EnumConfig e = ec(0, 3, 3, 8);
    std::vector<i64> ks = o.weyl_depth ? std::vector<i64>{*o.weyl_depth} : std::vector<i64>{8, 12, 16};
    return verify_equality(e, ks);
  }
  if (name == "classify") {
    auto cartans = o.cartans;
    if (cartans.empty()) cartans = {{3, 3}, {2, 3}, {3, 2}, {1, 5}, {5, 1}};
    for (const auto& [a1, a2] : cartans) {
      try {
        CartanData check(a1, a2);
      } catch (const std::invalid_argument& e) {
        throw InvalidConfig(e.what());
      }
    }
    return verify_classification(cartans, o.kmax.value_or(8), o.k_range.value_or(12));
  }
  if (name == "sequences") return verify_sequences(need_cfg(), o.jmax.value_or(20));
  if (name == "axioms") return verify_axioms(ec(6, 0, 0, 0));
  if (name == "ippin") return verify_ippin(ec(0, 4, 4, 0), o.L.value_or(10), o.L_max.value_or(40));
  throw std::invalid_argument("unknown suite '" + name + "'");
}

int run_suite_file(const std::string& name, const std::string& config_path, std::string* report_json) {
  SuiteReport rep;
  try {
    SuiteOptions o;
    o.apply(parse_config_file(config_path));
    rep = run_suite(name, o);
  } catch (const std::invalid_argument& e) {
    if (report_json) *report_json = json{{"suite", name}, {"error", e.what()}}.dump();
    return 2;
  }
  if (report_json) *report_json = rep.to_json().dump();
  return rep.exit_code();
}

}  // namespace hypcrystal
