// Batch verification harness for the sharp affine trace inequality toolkit:
//   afftrace verify    -- run verification suites, stream JSON reports
//   afftrace constants -- emit the table of sharp constants
//   afftrace body      -- operate on serialized star bodies

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "afftrace/body_io.hpp"
#include "afftrace/convex.hpp"
#include "afftrace/errors.hpp"
#include "afftrace/suite.hpp"

namespace {

std::vector<std::pair<int, double>> parse_range(const std::string& range, double p) {
  // "a..b" or a single integer
  const auto dots = range.find("..");
  int lo, hi;
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(range);
    } else {
      lo = std::stoi(range.substr(0, dots));
      hi = std::stoi(range.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw afftrace::UsageError("constants: cannot parse --n-range '" + range + "'");
  }
  if (lo > hi) throw afftrace::UsageError("constants: empty range");
  std::vector<std::pair<int, double>> dims;
  for (int n = lo; n <= hi; ++n) dims.emplace_back(n, p);
  return dims;
}

void write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw afftrace::UsageError("cannot open output path " + out_path);
  out << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification toolkit for sharp affine trace inequalities"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite_name = "all";
  int n = 3;
  double p = 2.0;
  double tol = 5e-3;
  std::uint64_t seed = 0x5eedULL;
  std::string out_path, format = "json";
  int workers = 0;
  int radial_order = 96, angular_order = 256;
  verify->add_option("--suite", suite_name, "check set: all or one module name");
  verify->add_option("--n", n, "ambient dimension (n >= 3)");
  verify->add_option("--p", p, "integrability exponent, 1 < p < n");
  verify->add_option("--tol", tol, "equality-case tolerance");
  verify->add_option("--seed", seed, "corpus seed");
  verify->add_option("--out", out_path, "write reports to this file");
  verify->add_option("--format", format, "json or csv");
  verify->add_option("--workers", workers, "worker threads (default: AFFTRACE_WORKERS or hw)");
  verify->add_option("--radial-order", radial_order, "radial quadrature order");
  verify->add_option("--angular-order", angular_order, "angular quadrature order");

  // constants
  auto* constants = app.add_subcommand("constants", "emit the sharp-constant table");
  std::string n_range = "3..8";
  double cp = 2.0;
  std::string c_out, c_format = "csv";
  constants->add_option("--n-range", n_range, "dimensions, e.g. 3..8 or 5");
  constants->add_option("--p", cp, "integrability exponent");
  constants->add_option("--out", c_out, "output file (default stdout)");
  constants->add_option("--format", c_format, "csv or json");

  // body
  auto* body = app.add_subcommand("body", "operate on a serialized star body");
  std::string op, in_path, b_out;
  double bp = 2.0;
  body->add_option("--op", op, "centroid | polar | volume")->required();
  body->add_option("--in", in_path, "input body JSON file")->required();
  body->add_option("--p", bp, "exponent for centroid");
  body->add_option("--out", b_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      afftrace::SuiteConfig config;
      if (suite_name != "all" && suite_name != "default") config.checks = {suite_name};
      config.dims = {{n, p}};
      config.tol_equality = tol;
      config.seed = seed;
      config.out_path = out_path;
      config.format = format;
      config.workers = workers;
      config.orders = afftrace::HalfspaceOrders{radial_order, angular_order};
      const afftrace::SuiteSummary summary = afftrace::run_suite(config, &std::cout);
      return summary.failed == 0 ? 0 : 1;
    }
    if (*constants) {
      const auto rows = afftrace::constants_table(parse_range(n_range, cp));
      if (c_format == "json") {
        write_or_print(afftrace::constants_table_json(rows), c_out);
      } else if (c_format == "csv") {
        write_or_print(afftrace::constants_table_csv(rows), c_out);
      } else {
        throw afftrace::UsageError("constants: format must be csv or json");
      }
      return 0;
    }
    if (*body) {
      const afftrace::StarBody in = afftrace::load_body(in_path);
      if (op == "volume") {
        write_or_print("{\"volume\":" + std::to_string(afftrace::volume(in)) + "}", b_out);
      } else if (op == "polar") {
        write_or_print(afftrace::body_to_json(afftrace::polar(in)), b_out);
      } else if (op == "centroid") {
        write_or_print(afftrace::body_to_json(afftrace::centroid_body(in, bp)), b_out);
      } else {
        throw afftrace::UsageError("body: unknown --op '" + op + "'");
      }
      return 0;
    }
  } catch (const afftrace::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
