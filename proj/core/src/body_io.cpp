#include "afftrace/body_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace afftrace {

std::string body_to_json(const StarBody& body) {
  nlohmann::ordered_json j;
  j["dimension"] = body.dim;
  j["symmetric"] = body.symmetric;
  auto dirs = nlohmann::json::array();
  auto radial = nlohmann::json::array();
  for (std::size_t i = 0; i < body.grid.size(); ++i) {
    auto d = nlohmann::json::array();
    for (int k = 0; k < body.dim; ++k) d.push_back(body.grid[i][k]);
    dirs.push_back(d);
    radial.push_back(body.grid_radial[i]);
  }
  j["directions"] = dirs;
  j["radial"] = radial;
  return j.dump();
}

StarBody body_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const int dim = j.at("dimension").get<int>();
  const bool symmetric = j.at("symmetric").get<bool>();
  auto dirs = std::make_shared<std::vector<Eigen::VectorXd>>();
  auto radial = std::make_shared<std::vector<double>>();
  for (const auto& d : j.at("directions")) {
    Eigen::VectorXd v(dim);
    for (int k = 0; k < dim; ++k) v[k] = d.at(k).get<double>();
    dirs->push_back(v.normalized());
  }
  for (const auto& r : j.at("radial")) radial->push_back(r.get<double>());
  if (dirs->size() != radial->size() || dirs->empty())
    throw std::invalid_argument("body_from_json: directions/radial size mismatch");

  RadialFn fn;
  if (dim == 2) {
    // Values are re-sorted by angle; periodic cubic interpolation.
    std::vector<std::pair<double, double>> samples;
    for (std::size_t i = 0; i < dirs->size(); ++i) {
      double a = std::atan2((*dirs)[i][1], (*dirs)[i][0]);
      if (a < 0) a += 2.0 * M_PI;
      samples.emplace_back(a, (*radial)[i]);
    }
    std::sort(samples.begin(), samples.end());
    auto data = std::make_shared<std::vector<std::pair<double, double>>>(std::move(samples));
    fn = [data](const Eigen::VectorXd& u) {
      double a = std::atan2(u[1], u[0]);
      if (a < 0) a += 2.0 * M_PI;
      const std::size_t k = data->size();
      // locate the bracketing samples (non-uniform safe: binary search)
      std::size_t hi = std::lower_bound(data->begin(), data->end(),
                                        std::make_pair(a, -1.0)) -
                       data->begin();
      auto at = [&](long i) {
        const long kk = static_cast<long>(k);
        long idx = ((i % kk) + kk) % kk;
        return (*data)[idx];
      };
      const long j1 = static_cast<long>(hi) - 1;
      auto wrap = [&](long i, double& ang, double& val) {
        auto pr = at(i);
        ang = pr.first + 2.0 * M_PI * std::floor(static_cast<double>(i) / k);
        val = pr.second;
      };
      double a0, v0, a1, v1, am, vm, a2, v2;
      wrap(j1 - 1, am, vm);
      wrap(j1, a0, v0);
      wrap(j1 + 1, a1, v1);
      wrap(j1 + 2, a2, v2);
      if (a1 == a0) return v0;
      const double s = (a - a0) / (a1 - a0);
      // Queries landing on a stored direction return the stored value, so a
      // save/load/save cycle is byte-stable.
      if (s < 1e-9) return v0;
      if (s > 1.0 - 1e-9) return v1;
      return v0 + 0.5 * s * (v1 - vm + s * (2.0 * vm - 5.0 * v0 + 4.0 * v1 - v2 +
                                            s * (3.0 * (v0 - v1) + v2 - vm)));
    };
  } else {
    fn = [dirs, radial](const Eigen::VectorXd& u) {
      double best = -2.0;
      std::size_t bi = 0;
      for (std::size_t i = 0; i < dirs->size(); ++i) {
        const double d = u.dot((*dirs)[i]);
        if (d > best) {
          best = d;
          bi = i;
        }
      }
      return (*radial)[bi];
    };
  }
  return make_star_body(dim, fn, symmetric, static_cast<int>(dirs->size()));
}

void save_body(const StarBody& body, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_body: cannot open " + path);
  out << body_to_json(body) << '\n';
}

StarBody load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_body: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return body_from_json(text);
}

}  // namespace afftrace
