#include "afftrace/corpus.hpp"

#include <algorithm>
#include <cmath>

namespace afftrace {

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

Eigen::MatrixXd Rng::rotation(int m) {
  if (m == 2) {
    const double a = uniform(0.0, 2.0 * M_PI);
    Eigen::Matrix2d r;
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return r;
  }
  // Orthonormalize a box-sampled matrix; determinant sign is irrelevant here.
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = uniform(-1.0, 1.0);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ();
}

Eigen::MatrixXd Rng::random_spd(int m, double lo, double hi) {
  const Eigen::MatrixXd r = rotation(m);
  Eigen::VectorXd ev(m);
  for (int i = 0; i < m; ++i) ev[i] = uniform(lo, hi);
  return r * ev.asDiagonal() * r.transpose();
}

Eigen::MatrixXd Rng::random_invertible(int m, double lo, double hi) {
  const Eigen::MatrixXd r1 = rotation(m);
  const Eigen::MatrixXd r2 = rotation(m);
  Eigen::VectorXd sv(m);
  for (int i = 0; i < m; ++i) sv[i] = uniform(lo, hi);
  return r1 * sv.asDiagonal() * r2.transpose();
}

namespace {

std::vector<Eigen::Vector2d> random_symmetric_polygon(Rng& rng, int half_points) {
  // Convex hull of +-points (Andrew monotone chain).
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < half_points; ++i) {
    const double a = rng.uniform(0.0, M_PI);
    const double r = rng.uniform(0.7, 1.8);
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  const std::size_t base = pts.size();
  for (std::size_t i = 0; i < base; ++i) pts.push_back(-pts[i]);

  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

Corpus make_corpus(int n, double p, std::uint64_t seed, const CorpusCounts& counts) {
  const int m = n - 1;
  Corpus corpus;
  Rng rng(seed);

  for (int i = 0; i < counts.extremals; ++i) {
    ExtremalParams params;
    params.n = n;
    params.p = p;
    params.lambda = rng.uniform(0.5, 3.0);
    params.delta = rng.uniform(0.5, 2.0);
    params.B = rng.random_invertible(m, 0.6, 2.2);  // condition number <= 5
    params.x0 = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < m; ++k) params.x0[k] = rng.uniform(-0.5, 0.5);
    params.gamma = rng.uniform(0.5, 2.0);
    params.sign = rng.uniform() < 0.5 ? 1 : -1;
    corpus.functions.push_back(
        {"extremal-" + std::to_string(i), FunctionKind::Extremal, extremal(params)});
  }

  for (int i = 0; i < counts.bumps; ++i) {
    const double amp = rng.uniform(0.5, 2.0);
    const double at = rng.uniform(0.4, 1.6);
    const double t0 = rng.uniform(-0.4, 0.6);
    Eigen::VectorXd ax(m), c(m);
    for (int k = 0; k < m; ++k) {
      ax[k] = rng.uniform(0.4, 1.8);
      c[k] = rng.uniform(-0.6, 0.6);
    }
    corpus.functions.push_back({"bump-" + std::to_string(i), FunctionKind::Bump,
                                gaussian_profile(n, amp, at, t0, ax, c)});
  }

  for (int i = 0; i < counts.radial; ++i) {
    // Radial-in-x members of the equality family. lambda = 1 and B = I keep
    // these inside the family that saturates the Young-form chain as well.
    ExtremalParams params;
    params.n = n;
    params.p = p;
    params.lambda = 1.0;
    params.delta = rng.uniform(0.6, 1.8);
    params.B = Eigen::MatrixXd::Identity(m, m);
    params.x0 = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < m; ++k) params.x0[k] = rng.uniform(-0.4, 0.4);
    params.gamma = rng.uniform(0.5, 1.5);
    corpus.functions.push_back({"radial-extremal-" + std::to_string(i),
                                FunctionKind::RadialExtremal, extremal(params)});
    // Radial Gaussian profile.
    const double at = rng.uniform(0.5, 1.5);
    const double ar = rng.uniform(0.5, 1.5);
    corpus.functions.push_back(
        {"radial-bump-" + std::to_string(i), FunctionKind::RadialBump,
         gaussian_profile(n, 1.0, at, rng.uniform(-0.3, 0.3),
                          Eigen::VectorXd::Constant(m, ar), Eigen::VectorXd::Zero(m))});
  }

  for (int i = 0; i < counts.anisotropic; ++i) {
    const double at = rng.uniform(0.5, 1.5);
    Eigen::VectorXd ax(m), c(m);
    for (int k = 0; k < m; ++k) {
      ax[k] = rng.uniform(0.3, 2.4);
      c[k] = 0.0;
    }
    corpus.functions.push_back({"anisotropic-" + std::to_string(i),
                                FunctionKind::Anisotropic,
                                gaussian_profile(n, 1.0, at, 0.0, ax, c)});
  }

  // Bodies in R^{n-1} plus a few fixed R^3 bodies when they differ.
  corpus.bodies.push_back({"ball", ball_body(m, 1.0)});
  corpus.bodies.push_back({"ball-r1.7", ball_body(m, 1.7)});
  for (int i = 0; i < 2; ++i) {
    Ellipsoid e{rng.random_spd(m, 0.5, 2.0)};
    corpus.bodies.push_back({"ellipsoid-" + std::to_string(i), ellipsoid_body(e)});
  }
  corpus.bodies.push_back({"cube", box_body(Eigen::VectorXd::Constant(m, 1.0))});
  {
    Eigen::VectorXd h(m);
    for (int k = 0; k < m; ++k) h[k] = rng.uniform(0.6, 1.6);
    corpus.bodies.push_back({"box", box_body(h)});
  }
  if (m == 2) {
    for (int i = 0; i < 2; ++i) {
      corpus.bodies.push_back({"polygon-" + std::to_string(i),
                               polygon_body(random_symmetric_polygon(rng, 5), true)});
    }
  }
  if (m == 2) {
    Ellipsoid e3{rng.random_spd(3, 0.5, 2.0)};
    corpus.bodies.push_back({"ellipsoid-3d", ellipsoid_body(e3)});
    corpus.bodies.push_back({"ball-3d", ball_body(3, 1.0)});
    corpus.bodies.push_back({"cube-3d", box_body(Eigen::VectorXd::Constant(3, 1.0))});
  }
  return corpus;
}

}  // namespace afftrace
