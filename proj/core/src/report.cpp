#include "afftrace/report.hpp"

#include <cstdint>
#include <nlohmann/json.hpp>
#include <sstream>

namespace afftrace {

namespace {

nlohmann::ordered_json link_json(const LinkCheck& l) {
  return nlohmann::ordered_json{{"name", l.name}, {"lhs", l.lhs},   {"rhs", l.rhs},
                                {"ratio", l.ratio}, {"tol", l.tol}, {"pass", l.pass}};
}

}  // namespace

std::string to_json(const VerificationReport& r) {
  nlohmann::ordered_json j{
      {"check", r.check},       {"anchor", r.anchor}, {"inputs", r.inputs_digest},
      {"lhs", r.lhs},           {"rhs", r.rhs},       {"ratio", r.ratio},
      {"tol", r.tolerance},     {"pass", r.pass},     {"equality", r.equality},
      {"wall_ms", r.wall_ms}};
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.links.empty()) {
    nlohmann::ordered_json links = nlohmann::ordered_json::array();
    for (const auto& l : r.links) links.push_back(link_json(l));
    j["links"] = links;
  }
  return j.dump();
}

std::string csv_header() {
  return "check,anchor,inputs,lhs,rhs,ratio,tol,pass,equality,wall_ms";
}

std::string to_csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << r.check << ',' << r.anchor << ',' << r.inputs_digest << ',' << r.lhs << ',' << r.rhs
     << ',' << r.ratio << ',' << r.tolerance << ',' << (r.pass ? 1 : 0) << ','
     << (r.equality ? 1 : 0) << ',' << r.wall_ms;
  return os.str();
}

std::string digest(const std::string& description) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : description) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace afftrace
