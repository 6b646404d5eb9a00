// Acceptance run over the configuration matrix; one PASS/FAIL line per
// criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "hypcrystal/harness.hpp"

using namespace hypcrystal;

namespace {

const std::vector<std::array<i64, 4>> kMatrix{{3, 3, 1, 1}, {2, 3, 1, 2}, {3, 2, 2, 1},
                                             {5, 1, 2, 1}, {1, 5, 1, 2}, {4, 2, 3, 2}};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Runs one suite per matrix entry, collecting the first witness of failures.
Outcome over_matrix(const std::function<SuiteReport(const LambdaConfig&)>& run,
                    const std::function<std::string(const SuiteReport&)>& note = nullptr) {
  Outcome o;
  std::string notes;
  for (const auto& m : kMatrix) {
    const LambdaConfig cfg(m[0], m[1], m[2], m[3]);
    SuiteReport r;
    try {
      r = run(cfg);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail += " " + cfg.label() + " threw: " + e.what() + ";";
      continue;
    }
    if (!r.verified) {
      o.pass = false;
      o.detail += " " + cfg.label() + " witness " + (r.witnesses.empty() ? "?" : r.witnesses[0].dump()) + ";";
    }
    if (note) notes += " " + cfg.label() + ":" + note(r);
  }
  if (o.pass) o.detail = notes.empty() ? " all " + std::to_string(kMatrix.size()) + " configs" : notes;
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int n, const char* name, const Outcome& o, double secs) {
    std::printf("%s criterion %d %s:%s (%.1fs)\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  };
  auto timed = [&](int n, const char* name, const std::function<Outcome()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = f();
    report(n, name, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  };

  timed(1, "closure under e_i, f_i", [] {
    return over_matrix([](const LambdaConfig& c) {
      return verify_closure(EnumConfig{c, 8, 0, 0, 0}, EnumConfig{c, 0, 3, 4, 0});
    });
  });
  timed(2, "Sigma inside Img", [] {
    return over_matrix([](const LambdaConfig& c) { return verify_containment(EnumConfig{c, 0, 3, 4, 0}); });
  });
  timed(3, "appendix identities and coefficient signs",
        [] { return over_matrix([](const LambdaConfig& c) { return verify_appendix_suite(c, 12); }); });
  timed(4, "extremality of star images", [] {
    return over_matrix([](const LambdaConfig& c) { return verify_extremal_sigma_prime(EnumConfig{c, 6, 0, 0, 8}, 6); });
  });
  timed(5, "Sigma equals extremal part of Img", [] {
    return over_matrix(
        [](const LambdaConfig& c) { return verify_equality(EnumConfig{c, 0, 3, 3, 8}, {8, 12, 16}); },
        [](const SuiteReport& r) { return " K=" + r.summary["achieving_K"].dump(); });
  });
  timed(6, "orbit classification", [] {
    Outcome o;
    const SuiteReport r = verify_classification({{3, 3}, {2, 3}, {3, 2}, {1, 5}, {5, 1}}, 8, 12);
    o.pass = r.verified;
    o.detail = o.pass ? " " + r.summary["weights_checked"].dump() + " weights, " + r.summary["admissible"].dump() +
                            " admissible, 0 disagreements"
                      : " witness " + r.witnesses[0].dump();
    return o;
  });
  timed(7, "ratio sequences", [] {
    return over_matrix([](const LambdaConfig& c) { return verify_sequences(c, 20); });
  });
  timed(8, "crystal axioms and star", [] {
    return over_matrix([](const LambdaConfig& c) { return verify_axioms(EnumConfig{c, 6, 0, 0, 0}); });
  });
  timed(9, "z1/z2 equivalences and gamma criteria", [] {
    return over_matrix([](const LambdaConfig& c) { return verify_ippin(EnumConfig{c, 0, 4, 4, 0}, 10, 40); },
                       [](const SuiteReport& r) { return " " + r.summary["xhat_count"].dump() + " xhat"; });
  });

  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
