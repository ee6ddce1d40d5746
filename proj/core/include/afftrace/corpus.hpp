#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "afftrace/star_body.hpp"
#include "afftrace/test_function.hpp"

namespace afftrace {

// Deterministic generator (splitmix64): identical parameters for identical
// seeds on every platform, which the suite's reproducibility contract needs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();                      // [0, 1)
  double uniform(double a, double b);
  Eigen::MatrixXd rotation(int m);       // Haar-ish random rotation
  Eigen::MatrixXd random_spd(int m, double lo, double hi);         // eigenvalues in [lo, hi]
  Eigen::MatrixXd random_invertible(int m, double lo, double hi);  // singular values in [lo, hi]

 private:
  std::uint64_t state_;
};

enum class FunctionKind { Extremal, RadialExtremal, Bump, RadialBump, Anisotropic };

struct CorpusFunction {
  std::string name;
  FunctionKind kind;
  TestFunction f;
};

struct CorpusBody {
  std::string name;
  StarBody body;
};

struct Corpus {
  std::vector<CorpusFunction> functions;
  std::vector<CorpusBody> bodies;
};

struct CorpusCounts {
  int extremals = 10;
  int bumps = 10;
  int radial = 3;
  int anisotropic = 3;
};

// Extremals with randomized (lambda, delta, B, x0), separable Gaussian bumps,
// radial-in-x profiles and anisotropic profiles; balls, ellipsoids, boxes and
// random symmetric polygons.
Corpus make_corpus(int n, double p, std::uint64_t seed, const CorpusCounts& counts = {});

}  // namespace afftrace
