#pragma once

// Pass/fail suites shared by the command-line tool and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace pbo::suites {

struct Check {
  std::string name;
  double value = 0.0;      // measured residual, violation count or extremum
  double tolerance = 0.0;  // passes when value <= tolerance
  bool passed = false;
  std::string detail;

  nlohmann::json to_json() const;
};

bool all_passed(const std::vector<Check>& checks);
nlohmann::json to_json(const std::vector<Check>& checks);

struct IdentityOptions {
  int quad_box = 64;       // |n_j| <= quad_box for the phase and support checks
  int gauge_n_max = 64;
  int gauge_fields = 50;
  int dbp_n_max = 16;
  int dbp_pairs = 20;
  std::uint64_t seed = 1;
  /// Deliberate fault for harness testing: "" (none), "phi-sign" or "m1-sign".
  std::string inject;

  /// Small sizes for a fast smoke run.
  static IdentityOptions quick();
  nlohmann::json to_json() const;
};

/// phi-factorization, m1-support, gauge-roundtrip, dbp-first-stage,
/// dbp-second-stage, resonant-partition, second-stage-partition.
std::vector<Check> identity_suite(const IdentityOptions& opt);

struct OracleOptions {
  int n_max = 8;
  std::uint64_t seed = 1;
  std::vector<double> K_values{8.0, 2.0};
  std::vector<double> M_values{4.0, 16.0};
  double tolerance = 1e-12;

  nlohmann::json to_json() const;
};

/// One check per term: worst relative l^2 difference between the fast
/// evaluator and the nested-loop reference over all (K, M) cases.
std::vector<Check> oracle_suite(const OracleOptions& opt);

}  // namespace pbo::suites
