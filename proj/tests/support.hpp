#pragma once

#include <random>

#include <Eigen/Dense>

#include "sofup/sofup.hpp"

namespace sofup::test {

// Test-side randomness uses its own engine so oracles never share state with
// the library's streams.
class Rng {
 public:
  explicit Rng(unsigned seed) : engine_(seed) {}

  Matrix normal(Index rows, Index cols) {
    std::normal_distribution<double> d;
    Matrix M(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) M(i, j) = d(engine_);
    return M;
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  /// Stable matrix: random matrix shifted so alpha = target < 0.
  Matrix stable(Index n, double target = -0.5) {
    Matrix M = normal(n, n);
    return M - (spectral_abscissa(M) - target) * Matrix::Identity(n, n);
  }
  /// Symmetric negative definite with eigenvalues in [-hi, -lo].
  Matrix symmetric_stable(Index n, double lo = 0.3, double hi = 3.0) {
    Eigen::HouseholderQR<Matrix> qr(normal(n, n));
    const Matrix Q = qr.householderQ();
    Vector d(n);
    for (Index i = 0; i < n; ++i) d(i) = -uniform(lo, hi);
    return Q * d.asDiagonal() * Q.transpose();
  }
  std::mt19937& engine() { return engine_; }

 private:
  std::mt19937 engine_;
};

struct Instance {
  Matrix B;
  Matrix C;
};

inline Instance random_instance(Rng& rng, Index n, Index m, Index p) {
  return {rng.normal(n, m), rng.normal(p, n)};
}

/// Column-stacking vec written out by hand, independent of the library's vec().
inline Vector vec_oracle(const Matrix& M) {
  Vector v(M.size());
  Index k = 0;
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i) v(k++) = M(i, j);
  return v;
}

/// H = C^T kron B by explicit loops.
inline Matrix kron_oracle(const Matrix& X, const Matrix& Y) {
  Matrix K(X.rows() * Y.rows(), X.cols() * Y.cols());
  for (Index i = 0; i < X.rows(); ++i)
    for (Index j = 0; j < X.cols(); ++j)
      for (Index k = 0; k < Y.rows(); ++k)
        for (Index l = 0; l < Y.cols(); ++l) K(i * Y.rows() + k, j * Y.cols() + l) = X(i, j) * Y(k, l);
  return K;
}

/// min ||H g + delta||^2 by the normal equations H^T H g = -H^T delta (LDLT).
struct LsqOracle {
  Vector g;
  double cost;
};
inline LsqOracle least_squares_oracle(const Matrix& B, const Matrix& C, const Matrix& delta) {
  const Matrix H = kron_oracle(C.transpose(), B);
  const Vector d = vec_oracle(delta);
  const Vector g = (H.transpose() * H).ldlt().solve(-H.transpose() * d);
  return {g, (H * g + d).squaredNorm()};
}

/// A model whose nominal closed loop A + B F C equals a given symmetric S.
struct SymmetricFixture {
  StateSpaceModel model;
  GainMatrix F;
  Matrix S;
};
inline SymmetricFixture symmetric_fixture(Rng& rng, Index n, Index m, Index p) {
  const Matrix S = rng.symmetric_stable(n, 0.5, 3.0);
  const Matrix B = rng.normal(n, m);
  const Matrix C = rng.normal(p, n);
  const Matrix F = 0.5 * rng.normal(m, p);
  return {StateSpaceModel(S - B * F * C, B, C), {F, GainProvenance::nominal}, S};
}

inline double sigma_min(const Matrix& M) {
  return Eigen::JacobiSVD<Matrix>(M).singularValues().minCoeff();
}

}  // namespace sofup::test
