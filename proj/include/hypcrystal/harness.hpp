#pragma once

// Enumeration, brute-force oracles, graph export and the suite driver.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypcrystal/polyhedral.hpp"
#include "hypcrystal/weyl.hpp"

namespace hypcrystal {

struct EnumConfig {
  LambdaConfig cfg;
  i64 depth = 0;
  i64 support = 1;
  i64 max_coord = 1;
  i64 weyl_depth = 8;

  /// Throws std::invalid_argument on nonpositive bounds or depth > 20.
  void validate() const;
  nlohmann::ordered_json params_json() const;
};

struct Edge {
  std::size_t src;
  int i;
  std::size_t dst;
  Dir dir;
};

struct Graph {
  std::vector<CrystalElt> nodes;  // BFS order, nodes[0] = z_lambda
  std::vector<i64> depth;         // BFS depth of each node
  std::vector<Edge> edges;        // each crystal edge once
  std::optional<CrystalElt> violation;
  std::string violated;
};

/// BFS from z_lambda under e1, e2, f1, f2; every new node is checked
/// against Sigma[lambda] and the walk stops at the first failure.
Graph bfs_enumerate(const EnumConfig& ec, const XiFamily& fam);
Graph bfs_enumerate(const EnumConfig& ec);

/// Elements of Sigma[lambda] supported in [-support, support] with
/// coordinates bounded by max_coord, sorted.
std::vector<CrystalElt> box_enumerate_sigma(const EnumConfig& ec, const XiFamily& fam);
std::vector<CrystalElt> box_enumerate_sigma(const EnumConfig& ec);

/// Box elements with both parts in Img, sorted.
std::vector<CrystalElt> box_enumerate_img(const EnumConfig& ec);

/// Plus vectors in Img supported in [1, support] with x_m <= min(max_coord, p_m).
std::vector<PlusVec> box_plus_below_p(const EnumConfig& ec);

struct SuiteReport {
  std::string suite;
  nlohmann::ordered_json config;
  bool verified = true;
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();

  void witness(nlohmann::ordered_json w) {
    verified = false;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
  }
  int exit_code() const { return verified ? 0 : 1; }
  nlohmann::ordered_json to_json() const;

  static constexpr std::size_t kMaxWitnesses = 20;
};

SuiteReport verify_closure(const EnumConfig& bfs, const EnumConfig& box);
SuiteReport verify_containment(const EnumConfig& ec);
SuiteReport verify_appendix_suite(const LambdaConfig& cfg, i64 k_range);
SuiteReport verify_extremal_sigma_prime(const EnumConfig& ec, i64 closed_form_k);
/// Escalates K over ks; summary.achieving_K records the first K with A = B.
SuiteReport verify_equality(const EnumConfig& ec, const std::vector<i64>& ks);
SuiteReport verify_classification(const std::vector<std::pair<i64, i64>>& cartans, i64 kmax, i64 brute_k);
SuiteReport verify_sequences(const LambdaConfig& cfg, i64 jmax);
SuiteReport verify_axioms(const EnumConfig& ec);
SuiteReport verify_ippin(const EnumConfig& ec, i64 L, i64 L_max, i64 eps_l_max = 2);

/// Brute force: some w_k mu with |k| <= bound, computed by reflections,
/// passes validate_lambda_form.
std::optional<std::pair<i64, Weight>> brute_translate_in_form(const CartanData& cd, const Weight& mu, i64 bound);

enum class GraphFormat { Json, Dot };

std::string export_graph(const Graph& g, GraphFormat format);
void export_graph(const Graph& g, GraphFormat format, const std::string& path);
/// Node set of a JSON graph export.
std::vector<CrystalElt> graph_nodes_from_json(const std::string& text);

/// Flat key/value configuration: JSON object or "key = value" lines.
using ConfigMap = std::map<std::string, nlohmann::ordered_json>;
ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

struct SuiteOptions {
  std::optional<LambdaConfig> cfg;
  std::optional<i64> depth, support, max_coord, weyl_depth, L, L_max, k_range, kmax, jmax;
  std::vector<std::pair<i64, i64>> cartans;

  /// keys: a1 a2 k1 k2 depth support max_coord weyl_depth L L_max k_range
  /// kmax jmax cartans
  void apply(const ConfigMap& m);
};

const std::vector<std::string>& suite_names();

/// Runs a named suite; throws std::invalid_argument for unknown names or
/// missing configuration.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

/// Exit code convention: 0 verified, 1 counterexample, 2 invalid input.
int run_suite_file(const std::string& name, const std::string& config_path, std::string* report_json);

}  // namespace hypcrystal
