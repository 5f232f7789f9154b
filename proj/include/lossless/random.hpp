#pragma once

// Seeded sampling of Schur parameters and orthogonal matrices. The standard
// <random> distributions are implementation-defined, so uniform and normal
// draws are built directly on mt19937_64 to keep outputs identical across
// standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "lossless/matrix.hpp"
#include "lossless/schur.hpp"

namespace lossless::random {

/// Cap on sampled Schur vector norms.
inline constexpr double kRadiusCap = 0.95;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal (Box-Muller, one value per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Matrix gaussian(int rows, int cols) {
    Matrix g(rows, cols);
    for (int c = 0; c < cols; ++c) {
      for (int r = 0; r < rows; ++r) g(r, c) = normal();
    }
    return g;
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniform direction, radius kRadiusCap * U^{1/m}.
inline Vector schur_vector(int m, Rng& rng) {
  Vector g = rng.gaussian(m, 1);
  double norm = g.norm();
  while (norm == 0.0) {
    g = rng.gaussian(m, 1);
    norm = g.norm();
  }
  const double radius = kRadiusCap * std::pow(rng.uniform(), 1.0 / m);
  return g * (radius / norm);
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of R's diagonal moved into Q.
inline Matrix orthogonal(int n, Rng& rng) {
  const Matrix g = rng.gaussian(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

inline schur::SchurParams schur_params(int m, int n, Rng& rng) {
  schur::SchurParams p{m, n, {}, Matrix()};
  p.v.reserve(n);
  for (int k = 0; k < n; ++k) p.v.push_back(schur_vector(m, rng));
  p.D0 = orthogonal(m, rng);
  return p;
}

inline schur::SchurParams schur_params(int m, int n, std::uint64_t seed) {
  Rng rng(seed);
  return schur_params(m, n, rng);
}

}  // namespace lossless::random
