#include "afftrace/star_body.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "afftrace/quadrature.hpp"

namespace afftrace {

namespace {

std::vector<Eigen::VectorXd> build_grid(int m, int size) {
  std::vector<Eigen::VectorXd> grid;
  if (m == 2) {
    const int count = size > 0 ? size : 512;
    grid.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * M_PI * (i + 0.5) / count;
      grid.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
    }
    return grid;
  }
  if (m == 3) {
    // Fibonacci spiral; first coordinate is the polar axis.
    const int count = size > 0 ? size : 2048;
    grid.reserve(count);
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * i;
      grid.push_back((Eigen::VectorXd(3) << z, r * std::cos(a), r * std::sin(a)).finished());
    }
    return grid;
  }
  return sphere_rule(m, 14).nodes;
}

}  // namespace

double StarBody::gauge(const Eigen::VectorXd& y) const {
  const double norm = y.norm();
  if (norm == 0.0) return 0.0;
  return norm / radial_fn(y / norm);
}

const std::vector<Eigen::VectorXd>& direction_grid(int m) {
  static std::map<int, std::vector<Eigen::VectorXd>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_grid(m, 0)).first;
  return it->second;
}

StarBody make_star_body(int dim, RadialFn radial, bool symmetric, int grid_size) {
  if (dim < 2) throw std::domain_error("make_star_body: dimension must be >= 2");
  StarBody body;
  body.dim = dim;
  body.symmetric = symmetric;
  body.radial_fn = std::move(radial);
  body.grid = grid_size > 0 ? build_grid(dim, grid_size) : direction_grid(dim);
  body.grid_radial.reserve(body.grid.size());
  for (const auto& u : body.grid) {
    const double r = body.radial_fn(u);
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::domain_error("make_star_body: radial function must be positive and finite");
    body.grid_radial.push_back(r);
  }
  return body;
}

StarBody ball_body(int m, double r) {
  if (!(r > 0.0)) throw std::domain_error("ball_body: radius must be positive");
  return make_star_body(m, [r](const Eigen::VectorXd&) { return r; }, true);
}

StarBody ellipsoid_body(const Ellipsoid& e) {
  const Eigen::MatrixXd& M = e.M;
  if (M.rows() != M.cols()) throw std::domain_error("ellipsoid_body: M must be square");
  if (!M.isApprox(M.transpose(), 1e-12))
    throw std::domain_error("ellipsoid_body: M must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("ellipsoid_body: M must be positive definite");
  Eigen::MatrixXd Mcopy = M;
  return make_star_body(
      static_cast<int>(M.rows()),
      [Mcopy](const Eigen::VectorXd& u) { return 1.0 / std::sqrt(u.dot(Mcopy * u)); }, true);
}

StarBody box_body(const Eigen::VectorXd& halfwidths) {
  if (halfwidths.minCoeff() <= 0.0)
    throw std::domain_error("box_body: halfwidths must be positive");
  Eigen::VectorXd h = halfwidths;
  StarBody body = make_star_body(
      static_cast<int>(h.size()),
      [h](const Eigen::VectorXd& u) {
        double g = 0.0;
        for (int i = 0; i < u.size(); ++i) g = std::max(g, std::abs(u[i]) / h[i]);
        return 1.0 / g;
      },
      true);
  if (h.size() == 2) {
    for (const double sx : {1.0, -1.0})
      for (const double sy : {1.0, -1.0}) {
        double a = std::atan2(sy * h[1], sx * h[0]);
        if (a < 0) a += 2.0 * M_PI;
        body.kink_angles.push_back(a);
      }
  }
  return body;
}

StarBody polygon_body(const std::vector<Eigen::Vector2d>& vertices, bool symmetric) {
  if (vertices.size() < 3) throw std::domain_error("polygon_body: need >= 3 vertices");
  // Half-plane representation <n_j, x> <= b_j from ccw edges.
  std::vector<Eigen::Vector2d> normals;
  std::vector<double> offsets;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Eigen::Vector2d a = vertices[i];
    const Eigen::Vector2d b = vertices[(i + 1) % vertices.size()];
    const Eigen::Vector2d edge = b - a;
    Eigen::Vector2d nrm(edge.y(), -edge.x());  // outward for ccw order
    const double off = nrm.dot(a);
    if (!(off > 0.0))
      throw std::domain_error("polygon_body: origin must be interior, vertices ccw");
    normals.push_back(nrm);
    offsets.push_back(off);
  }
  StarBody body = make_star_body(
      2,
      [normals, offsets](const Eigen::VectorXd& u) {
        double r = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < normals.size(); ++j) {
          const double d = normals[j].x() * u[0] + normals[j].y() * u[1];
          if (d > 0.0) r = std::min(r, offsets[j] / d);
        }
        return r;
      },
      symmetric);
  for (const auto& v : vertices) {
    double a = std::atan2(v.y(), v.x());
    if (a < 0) a += 2.0 * M_PI;
    body.kink_angles.push_back(a);
  }
  return body;
}

}  // namespace afftrace
