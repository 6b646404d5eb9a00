// hypcrystal: command-line front end.  Exit codes: 0 verified, 1
// counterexample, 2 invalid input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <json.hpp>

#include "hypcrystal/harness.hpp"

using namespace hypcrystal;
using json = nlohmann::ordered_json;

namespace {

struct Flags {
  std::optional<i64> a1, a2, k1, k2, depth, support, max_coord, weyl_depth;
  std::string config, format = "json", out, element;

  void add_config(CLI::App* s) {
    s->add_option("--a1", a1, "Cartan entry a1");
    s->add_option("--a2", a2, "Cartan entry a2");
    s->add_option("--k1", k1, "lambda = k1 L1 - k2 L2");
    s->add_option("--k2", k2);
    s->add_option("--config", config, "TOML-style or JSON config; overrides flags");
  }
  void add_enum(CLI::App* s) {
    s->add_option("--depth", depth, "BFS depth");
    s->add_option("--support", support, "box support bound");
    s->add_option("--max-coord", max_coord, "box coordinate bound");
    s->add_option("--weyl-depth", weyl_depth, "extremality depth K");
  }

  // Flags first, then the config file on top.
  ConfigMap merged() const {
    ConfigMap m;
    if (a1) m["a1"] = *a1;
    if (a2) m["a2"] = *a2;
    if (k1) m["k1"] = *k1;
    if (k2) m["k2"] = *k2;
    if (depth) m["depth"] = *depth;
    if (support) m["support"] = *support;
    if (max_coord) m["max_coord"] = *max_coord;
    if (weyl_depth) m["weyl_depth"] = *weyl_depth;
    if (!config.empty())
      for (auto& [k, v] : parse_config_file(config)) m[k] = v;
    return m;
  }

  SuiteOptions options() const {
    SuiteOptions o;
    o.apply(merged());
    return o;
  }

  const LambdaConfig& cfg(const SuiteOptions& o) const {
    if (!o.cfg) throw InvalidConfig("no configuration: pass --a1 --a2 --k1 --k2 or --config");
    return *o.cfg;
  }

  GraphFormat graph_format() const {
    if (format == "json") return GraphFormat::Json;
    if (format == "dot") return GraphFormat::Dot;
    throw std::invalid_argument("--format must be json or dot");
  }

  void emit(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out);
    f << text;
  }
};

EnumConfig enum_config(const SuiteOptions& o, const LambdaConfig& cfg, i64 depth, i64 support, i64 max_coord, i64 K) {
  EnumConfig ec{cfg, o.depth.value_or(depth), o.support.value_or(support), o.max_coord.value_or(max_coord),
                o.weyl_depth.value_or(K)};
  ec.validate();
  return ec;
}

CrystalElt read_element(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("--element is required");
  std::string body = text;
  if (body.front() == '@') {
    std::ifstream f(body.substr(1), std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read " + body.substr(1));
    body.assign(std::istreambuf_iterator<char>(f), {});
  }
  return element_from_string(body);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral realization of extremal weight crystals for rank-2 hyperbolic Cartan data"};
  app.require_subcommand(1);
  Flags fl;
  std::string suite;

  auto* classify = app.add_subcommand("classify", "orbit classification of mu = k1 L1 - k2 L2");
  fl.add_config(classify);

  auto* enumerate = app.add_subcommand("enumerate", "BFS from z_lambda with membership assertions");
  fl.add_config(enumerate);
  fl.add_enum(enumerate);
  enumerate->add_option("--format", fl.format, "json or dot");
  enumerate->add_option("--out", fl.out, "output file (default stdout)");

  auto* box = app.add_subcommand("box-enum", "elements of Sigma in a box");
  fl.add_config(box);
  fl.add_enum(box);
  box->add_option("--out", fl.out);

  auto* star = app.add_subcommand("star", "star involution of an element");
  fl.add_config(star);
  star->add_option("--element", fl.element, "element JSON, or @file")->required();

  auto* extremal = app.add_subcommand("extremal", "extremality up to depth K");
  fl.add_config(extremal);
  fl.add_enum(extremal);
  extremal->add_option("--element", fl.element, "element JSON, or @file")->required();

  auto* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  fl.add_config(check);
  fl.add_enum(check);
  check->add_option("--out", fl.out, "report file (default stdout)");

  auto* exportc = app.add_subcommand("export", "write the BFS graph as JSON or DOT");
  fl.add_config(exportc);
  fl.add_enum(exportc);
  exportc->add_option("--format", fl.format, "json or dot");
  exportc->add_option("--out", fl.out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*classify) {
      // mu need not be an admissible lambda here, so no LambdaConfig.
      const ConfigMap m = fl.merged();
      auto get = [&](const char* key) -> i64 {
        auto it = m.find(key);
        if (it == m.end() || !it->second.is_number_integer())
          throw std::invalid_argument(std::string("classify needs integer ") + key);
        return it->second.get<i64>();
      };
      const i64 a1 = get("a1"), a2 = get("a2"), k1 = get("k1"), k2 = get("k2");
      const CartanData cd(a1, a2);
      const Weight mu{k1, -k2};
      const OrbitClass oc = classify_orbit(cd, mu);
      json j = {{"a1", a1}, {"a2", a2}, {"mu", to_json(mu)}, {"satisfies_A", oc.satisfies_A}};
      if (oc.representative) {
        j["representative"] = to_json(*oc.representative);
        j["representative_k"] = *oc.representative_k;
        j["form"] = to_string(validate_lambda_form(cd, oc.representative->m1, -oc.representative->m2));
      }
      if (oc.witness) j["witness"] = {{"k", oc.witness->k}, {"weight", to_json(oc.witness->weight)}};
      j["scanned"] = {oc.scanned_lo, oc.scanned_hi};
      std::cout << j.dump() << "\n";
      return 0;
    }
    const SuiteOptions o = fl.options();
    if (*enumerate || *exportc) {
      const EnumConfig ec = enum_config(o, fl.cfg(o), 4, 0, 0, 0);
      const Graph g = bfs_enumerate(ec);
      fl.emit(export_graph(g, fl.graph_format()));
      if (g.violation) {
        std::cerr << "membership failure: " << to_json_string(*g.violation) << " violates " << g.violated << "\n";
        return 1;
      }
      return 0;
    }
    if (*box) {
      const EnumConfig ec = enum_config(o, fl.cfg(o), 0, 2, 2, 0);
      json arr = json::array();
      for (const auto& e : box_enumerate_sigma(ec)) arr.push_back(to_json(e));
      fl.emit(arr.dump() + "\n");
      return 0;
    }
    if (*star) {
      const CrystalElt x = read_element(fl.element);
      std::cout << to_json_string(star_full(x, fl.cfg(o).cartan())) << "\n";
      return 0;
    }
    if (*extremal) {
      const CrystalElt x = read_element(fl.element);
      const ExtremalReport rep = extremal_report(fl.cfg(o).cartan(), x, o.weyl_depth.value_or(8));
      std::cout << to_json(rep, x).dump() << "\n";
      return rep.extremal ? 0 : 1;
    }
    if (*check) {
      const SuiteReport rep = run_suite(suite, o);
      fl.emit(rep.to_json().dump(2) + "\n");
      return rep.exit_code();
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
