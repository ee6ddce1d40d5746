#pragma once

#include <string>
#include <vector>

namespace afftrace {

struct LinkCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Structured record of one inequality/identity check.
struct VerificationReport {
  std::string check;          // machine name of the check
  std::string anchor;         // stable id of the statement being verified
  std::string inputs_digest;  // hash of the inputs
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool equality = false;  // |ratio - 1| within tolerance
  double wall_ms = 0.0;
  std::string note;  // error text or context, empty when clean
  std::vector<LinkCheck> links;
};

std::string to_json(const VerificationReport& r);

std::string csv_header();
std::string to_csv_row(const VerificationReport& r);

// FNV-1a digest of a string describing the inputs.
std::string digest(const std::string& description);

}  // namespace afftrace
