#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "hypcrystal/harness.hpp"

using namespace hypcrystal;
using json = nlohmann::ordered_json;

namespace {

EnumConfig ec(i64 a1, i64 a2, i64 k1, i64 k2, i64 depth, i64 support, i64 max_coord, i64 K = 8) {
  return EnumConfig{LambdaConfig(a1, a2, k1, k2), depth, support, max_coord, K};
}

// Full cartesian product of the box filtered by a predicate, no pruning.
template <class Pred>
std::vector<CrystalElt> brute_box(const LambdaConfig& cfg, i64 S, i64 M, Pred keep) {
  std::vector<CrystalElt> out;
  std::vector<i64> idx;
  for (i64 k = -S; k <= S; ++k) idx.push_back(k);
  CrystalElt cur = CrystalElt::highest(cfg.lambda());
  auto rec = [&](auto&& self, std::size_t t) -> void {
    if (t == idx.size()) {
      if (keep(cur)) out.push_back(cur);
      return;
    }
    for (i64 v = 0; v <= M; ++v) {
      if (idx[t] >= 1)
        cur.plus.set(idx[t], v);
      else
        cur.minus.set(idx[t], -v);
      self(self, t + 1);
    }
    if (idx[t] >= 1)
      cur.plus.set(idx[t], 0);
    else
      cur.minus.set(idx[t], 0);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string tmp_path(const std::string& name) { return "/tmp/hypcrystal_test_" + name; }

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("EnumConfig bounds") {
  CHECK_NOTHROW(ec(3, 3, 1, 1, 20, 1, 1).validate());
  CHECK_THROWS_AS(ec(3, 3, 1, 1, 21, 1, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(ec(3, 3, 1, 1, -1, 1, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(ec(3, 3, 1, 1, 1, -1, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(ec(3, 3, 1, 1, 1, 1, -2).validate(), std::invalid_argument);
}

TEST_CASE("BFS examples") {
  const Graph g1 = bfs_enumerate(ec(3, 3, 1, 1, 1, 0, 0));
  CHECK(g1.nodes.size() == 3);
  CHECK(g1.edges.size() == 2);
  CHECK_FALSE(g1.violation);
  std::set<std::string> names;
  for (const auto& n : g1.nodes) names.insert(to_json_string(n));
  CHECK(names.count(R"({"plus": {}, "tag": [1, -1], "minus": {}})"));
  CHECK(names.count(R"({"plus": {"1": 1}, "tag": [1, -1], "minus": {}})"));
  CHECK(names.count(R"({"plus": {}, "tag": [1, -1], "minus": {"0": -1}})"));
  const Graph g0 = bfs_enumerate(ec(3, 3, 1, 1, 0, 0, 0));
  CHECK(g0.nodes.size() == 1);
  CHECK(g0.edges.empty());
  std::size_t prev = 0;
  for (i64 d = 0; d <= 7; ++d) {
    const std::size_t n = bfs_enumerate(ec(3, 3, 1, 1, d, 0, 0)).nodes.size();
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("BFS edges are crystal edges") {
  const EnumConfig e = ec(2, 3, 1, 2, 5, 0, 0);
  const Graph g = bfs_enumerate(e);
  const CartanData& cd = e.cfg.cartan();
  std::set<std::tuple<std::size_t, int, std::size_t>> seen;
  for (const Edge& ed : g.edges) {
    const auto from = ed.dir == Dir::F ? ed.src : ed.dst, to = ed.dir == Dir::F ? ed.dst : ed.src;
    CHECK(apply_f(cd, g.nodes[from], ed.i) == g.nodes[to]);
    CHECK(seen.insert({from, ed.i, to}).second);
  }
  // every f/e edge between two visited nodes at depth < 5 is recorded
  std::map<CrystalElt, std::size_t> idx;
  for (std::size_t t = 0; t < g.nodes.size(); ++t) idx[g.nodes[t]] = t;
  for (std::size_t t = 0; t < g.nodes.size(); ++t) {
    if (g.depth[t] >= 5) continue;
    for (int i : {1, 2})
      if (auto f = apply_f(cd, g.nodes[t], i)) CHECK(seen.count({t, i, idx.at(*f)}));
  }
}

TEST_CASE("box enumeration matches brute force") {
  for (auto m : std::vector<std::array<i64, 4>>{{3, 3, 1, 1}, {2, 3, 1, 2}, {3, 2, 2, 1}, {4, 2, 3, 2}}) {
    const EnumConfig e = ec(m[0], m[1], m[2], m[3], 0, 2, 3);
    const XiFamily fam(e.cfg);
    const auto want = brute_box(e.cfg, 2, 3, [&](const CrystalElt& x) { return sigma_membership(x, fam); });
    CHECK(box_enumerate_sigma(e) == want);
    const CartanData& cd = e.cfg.cartan();
    const auto img = brute_box(e.cfg, 2, 3, [&](const CrystalElt& x) { return img_membership(x, cd); });
    CHECK(box_enumerate_img(e) == img);
  }
}

TEST_CASE("box examples") {
  const auto box = box_enumerate_sigma(ec(3, 3, 1, 1, 0, 2, 3));
  const std::set<CrystalElt> s(box.begin(), box.end());
  const Weight lam{1, -1};
  CHECK(s.count(CrystalElt::highest(lam)));
  CHECK(s.count(CrystalElt{PlusVec(std::map<i64, i64>{{1, 1}}), lam, {}}));
  CHECK(s.count(CrystalElt{{}, lam, MinusVec(std::map<i64, i64>{{0, -1}})}));
  CHECK_FALSE(s.count(CrystalElt{PlusVec(std::map<i64, i64>{{1, 2}}), lam, {}}));
  CHECK(std::is_sorted(box.begin(), box.end()));
  const auto tiny = box_enumerate_sigma(ec(3, 3, 1, 1, 0, 0, 3));
  CHECK(std::find(tiny.begin(), tiny.end(), CrystalElt::highest(lam)) != tiny.end());
}

TEST_CASE("BFS nodes lie in a covering box") {
  const EnumConfig e = ec(3, 3, 1, 1, 4, 0, 0);
  const Graph g = bfs_enumerate(e);
  i64 S = 0, M = 0;
  for (const auto& n : g.nodes) {
    S = std::max({S, n.hi(), 1 - n.lo() - 1});
    for (i64 k = n.lo(); k <= n.hi(); ++k) M = std::max(M, std::abs(n.x(k)));
  }
  const auto box = box_enumerate_sigma(EnumConfig{e.cfg, 0, S, M, 0});
  const std::set<CrystalElt> s(box.begin(), box.end());
  for (const auto& n : g.nodes) CHECK(s.count(n));
}

TEST_CASE("plus parts capped by p") {
  const EnumConfig e = ec(3, 3, 1, 1, 0, 3, 4);
  const auto xs = box_plus_below_p(e);
  CHECK_FALSE(xs.empty());
  for (const auto& x : xs) {
    CHECK(img_membership(x, e.cfg.cartan()));
    for (i64 k = 1; k <= 3; ++k) CHECK(x.get(k) <= std::min<i64>(4, e.cfg.p_int(k)));
  }
}

TEST_CASE("z1 / z2 examples") {
  const LambdaConfig cfg(3, 3, 1, 1);
  const CartanData& cd = cfg.cartan();
  for (i64 l = 1; l <= 10; ++l) {
    PlusVec z1;
    for (i64 j = 1; j <= 2 * l; ++j) z1.set(j, cfg.p_int(j - 2 * l));
    CHECK(img_membership(z1, cd));
  }
  // x = plus{1:1}, l = 1: z2 = (x2 - p2, x1 - p1) = (-2, 0)
  MinusVec z2;
  z2.set(0, 0 - cfg.p_int(2));
  z2.set(-1, 1 - cfg.p_int(1));
  CHECK(z2 == MinusVec(std::map<i64, i64>{{0, -2}}));
  // its c' conditions over j in [-2l+2, -1] are vacuous for l = 1
  CHECK(img_membership(z2, cd));
  // gamma_1 x_1 - x_2 = beta > 0, and every c-inequality holds
  for (i64 l = 1; l <= 10; ++l) CHECK(cd.c(1 + 2 * l) * 1 - cd.c(2 * l) * 0 >= 0);
}

TEST_CASE("equality with too small K is reported") {
  const EnumConfig e = ec(3, 3, 1, 1, 0, 2, 2);
  const SuiteReport low = verify_equality(e, {0});
  const auto& per = low.summary["per_K"][0];
  CHECK(per["A_minus_B"] == 0);
  if (per["B_minus_A"].get<i64>() > 0) {
    CHECK_FALSE(low.verified);
    CHECK(low.exit_code() == 1);
    CHECK(low.summary["achieving_K"].is_null());
  }
  const SuiteReport ok = verify_equality(e, {0, 8});
  CHECK(ok.verified);
  CHECK(ok.summary["achieving_K"] == 8);
  // B only shrinks when K grows
  const SuiteReport chain = verify_equality(e, {1, 2, 3, 4, 8});
  i64 prevB = std::numeric_limits<i64>::max();
  for (const auto& row : chain.summary["per_K"]) {
    CHECK(row["B"].get<i64>() <= prevB);
    prevB = row["B"].get<i64>();
  }
}

TEST_CASE("brute force translate") {
  const CartanData cd(3, 3);
  const auto r = brute_translate_in_form(cd, {2, -1}, 12);
  REQUIRE(r);
  CHECK(validate_lambda_form(cd, r->second.m1, -r->second.m2) != LambdaForm::Reject);
  CHECK_FALSE(brute_translate_in_form(cd, {1, -3}, 12));
  CHECK(brute_translate_in_form(cd, {1, -1}, 12)->first == 0);
}

TEST_CASE("suite reports") {
  SuiteOptions o;
  o.cfg = LambdaConfig(3, 3, 1, 1);
  o.depth = 3;
  o.support = 2;
  o.max_coord = 2;
  for (const std::string& name : suite_names()) {
    SuiteOptions oo = o;
    if (name == "classify") oo.cartans = {{3, 3}, {2, 3}}, oo.kmax = 4;
    const SuiteReport r = run_suite(name, oo);
    CHECK_MESSAGE(r.verified, name);
    const json j = r.to_json();
    CHECK(j["suite"] == name);
    for (const char* key : {"config", "verified", "witnesses", "params"}) CHECK(j.contains(key));
    CHECK(run_suite(name, oo).to_json().dump() == j.dump());  // deterministic
  }
  CHECK_THROWS_AS(run_suite("nonsense", o), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("closure", SuiteOptions{}), std::invalid_argument);
  SuiteReport r;
  for (int t = 0; t < 30; ++t) r.witness({{"t", t}});
  CHECK(r.witnesses.size() == SuiteReport::kMaxWitnesses);
  CHECK(r.exit_code() == 1);
}

TEST_CASE("graph export") {
  const Graph g = bfs_enumerate(ec(3, 3, 1, 1, 1, 0, 0));
  const std::string js = export_graph(g, GraphFormat::Json);
  CHECK(js == export_graph(bfs_enumerate(ec(3, 3, 1, 1, 1, 0, 0)), GraphFormat::Json));
  const json parsed = json::parse(js);
  CHECK(parsed["nodes"].size() == 3);
  CHECK(parsed["edges"].size() == 2);
  const auto back = graph_nodes_from_json(js);
  CHECK(std::set<CrystalElt>(back.begin(), back.end()) == std::set<CrystalElt>(g.nodes.begin(), g.nodes.end()));
  for (const auto& e : parsed["edges"]) {
    const CrystalElt& s = back[e["src"].get<std::size_t>()];
    CHECK(apply_f(LambdaConfig(3, 3, 1, 1).cartan(), s, e["i"].get<int>()) == back[e["dst"].get<std::size_t>()]);
  }

  const std::string dot = export_graph(g, GraphFormat::Dot);
  CHECK(dot.rfind("digraph crystal {", 0) == 0);
  CHECK(dot.find("color=red") != std::string::npos);
  CHECK(dot.find("color=blue") != std::string::npos);
  CHECK(dot.find(R"("{\"plus\": {}, \"tag\": [1, -1], \"minus\": {}}" -> "{\"plus\": {\"1\": 1}, \"tag\": [1, -1], \"minus\": {}}" [label="1", color=red];)") != std::string::npos);
  CHECK(dot.find(R"("{\"plus\": {}, \"tag\": [1, -1], \"minus\": {\"0\": -1}}" -> "{\"plus\": {}, \"tag\": [1, -1], \"minus\": {}}" [label="2", color=blue];)") != std::string::npos);
  int arrows = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++arrows;
  CHECK(arrows == 2);
  CHECK(dot.back() == '\n');

  const std::string lone = export_graph(bfs_enumerate(ec(3, 3, 1, 1, 0, 0, 0)), GraphFormat::Dot);
  CHECK(lone == "digraph crystal {\n  \"{\\\"plus\\\": {}, \\\"tag\\\": [1, -1], \\\"minus\\\": {}}\";\n}\n");

  const std::string path = tmp_path("graph.json");
  export_graph(g, GraphFormat::Json, path);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == js);
  std::remove(path.c_str());
  CHECK_THROWS(export_graph(g, GraphFormat::Dot, "/nonexistent_dir/x.dot"));
}

TEST_CASE("config parsing") {
  const ConfigMap t = parse_config_text("# matrix entry\n[lambda]\na1 = 3\na2 = 3 # inline\nk1 = 1\nk2 = 1\n\n[enum]\nmax-coord = 2\ncartans = [[3, 3], [2, 3]]\n");
  CHECK(t.at("a1") == 3);
  CHECK(t.at("a2") == 3);
  CHECK(t.at("max-coord") == 2);
  SuiteOptions o;
  o.apply(t);
  REQUIRE(o.cfg);
  CHECK(o.cfg->label() == LambdaConfig(3, 3, 1, 1).label());
  CHECK(o.max_coord == 2);
  CHECK(o.cartans.size() == 2);
  const ConfigMap j = parse_config_text(R"({"a1": 2, "a2": 3, "k1": 1, "k2": 2, "depth": 4})");
  SuiteOptions oj;
  oj.apply(j);
  CHECK(oj.cfg->k2() == 2);
  CHECK(oj.depth == 4);
  CHECK_THROWS_AS(parse_config_text("a1 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("a1 = three"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("{\"a1\": "), std::invalid_argument);
  SuiteOptions bad;
  CHECK_THROWS_AS(bad.apply(parse_config_text("a1 = 3\na2 = 3\nk1 = 1\nk2 = 3")), InvalidConfig);
  CHECK_THROWS_AS(bad.apply(parse_config_text("a1 = 3")), InvalidConfig);
  CHECK_THROWS_AS(bad.apply(parse_config_text("depth = \"deep\"")), std::invalid_argument);
}

TEST_CASE("run_suite_file exit codes") {
  const std::string good = tmp_path("good.toml"), bad = tmp_path("bad.toml"), invalid = tmp_path("invalid.json"),
                    low = tmp_path("low.toml");
  write_file(good, "a1 = 3\na2 = 3\nk1 = 1\nk2 = 1\ndepth = 8\n");
  write_file(bad, "a1 = 3\na2 = \n");
  write_file(invalid, R"({"a1": 3, "a2": 3, "k1": 1, "k2": 3})");
  write_file(low, "a1 = 3\na2 = 3\nk1 = 1\nk2 = 1\nsupport = 2\nmax_coord = 2\nweyl_depth = 0\n");
  std::string report;
  CHECK(run_suite_file("closure", good, &report) == 0);
  CHECK(json::parse(report)["verified"] == true);
  CHECK(run_suite_file("closure", bad, &report) == 2);
  CHECK(run_suite_file("closure", invalid, &report) == 2);
  CHECK(run_suite_file("closure", tmp_path("missing.toml"), &report) == 2);
  CHECK(run_suite_file("nonsense", good, &report) == 2);
  const int rc = run_suite_file("equality", low, &report);
  const json r = json::parse(report);
  CHECK(rc == (r["verified"] == true ? 0 : 1));
  CHECK(run_suite_file("classify", good, nullptr) == 0);
  for (const auto& p : {good, bad, invalid, low}) std::remove(p.c_str());
}
