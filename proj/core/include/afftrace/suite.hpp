#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "afftrace/quadrature.hpp"
#include "afftrace/report.hpp"

namespace afftrace {

struct SuiteConfig {
  std::vector<std::string> checks;  // empty = all
  std::vector<std::pair<int, double>> dims = {{3, 2.0}};
  HalfspaceOrders orders{96, 256};
  double tol_equality = 5e-3;
  double tol_identity = 1e-6;
  std::uint64_t seed = 0x5eedULL;
  std::string out_path;        // empty = no file output
  std::string format = "json"; // json | csv
  int workers = 0;             // 0 = AFFTRACE_WORKERS env or hardware count
};

struct SuiteSummary {
  int passed = 0;
  int failed = 0;
  double wall_ms = 0.0;
  std::vector<VerificationReport> reports;  // canonical order
};

// Names accepted in SuiteConfig::checks.
const std::vector<std::string>& available_checks();

// Validates the configuration, throwing UsageError on malformed input.
void validate_config(const SuiteConfig& config);

// Runs the selected checks. Reports stream to `live` (line-delimited JSON) as
// they complete; the full set is returned (and written to out_path) in
// canonical order.
SuiteSummary run_suite(const SuiteConfig& config, std::ostream* live = nullptr);

struct ConstantsRow {
  int n;
  double p, K_n, A_np, c_np, a_np, d1, d2;
};

std::vector<ConstantsRow> constants_table(const std::vector<std::pair<int, double>>& dims);
std::string constants_table_json(const std::vector<ConstantsRow>& rows);
std::string constants_table_csv(const std::vector<ConstantsRow>& rows);

}  // namespace afftrace
