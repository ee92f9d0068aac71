#pragma once

#include <optional>

#include "sofup/kron.hpp"
#include "sofup/statespace.hpp"

namespace sofup {

struct ProjectorOptions {
  Index max_explicit_n = kDefaultExplicitLimit;
  std::optional<double> rank_tol;
};

/// Orthogonal projector onto the complement of range(H), H = C^T kron B.
///
/// build() forms P twice: directly as I - H H^+ (complete orthogonal
/// decomposition) and from the pinned SVD factors as U_H diag(0, I) U_H^T.
/// The factored matrix is kept; the Frobenius gap between the two is kept as
/// route_discrepancy().
class Projector {
 public:
  static Projector build(const Matrix& B, const Matrix& C, const ProjectorOptions& options = {});

  [[nodiscard]] const Matrix& matrix() const noexcept { return P_; }
  [[nodiscard]] const Matrix& H() const noexcept { return H_; }
  [[nodiscard]] const KroneckerFactors& factors() const noexcept { return factors_; }
  [[nodiscard]] double route_discrepancy() const noexcept { return discrepancy_; }

  /// delta^T P delta.
  [[nodiscard]] double quadratic_form(const Matrix& delta) const;

 private:
  Projector(KroneckerFactors factors, Matrix H, Matrix P, double discrepancy)
      : factors_(std::move(factors)), H_(std::move(H)), P_(std::move(P)), discrepancy_(discrepancy) {}

  KroneckerFactors factors_;
  Matrix H_;
  Matrix P_;
  double discrepancy_;
};

/// I - H H^+ with H^+ from a complete orthogonal decomposition.
Matrix projector_direct(const Matrix& H);
/// U_H diag(0, I_{n^2 - mp}) U_H^T.
Matrix projector_factored(const KroneckerFactors& factors);

/// Cached B^+ and C^T (C C^T)^{-1} for repeated updates against one (B, C).
struct GainUpdater {
  GainUpdater(const Matrix& B, const Matrix& C, std::optional<double> rank_tol = std::nullopt);

  /// G* = -B^+ Delta (C^{T+})^T, multiplied in the cheaper order.
  [[nodiscard]] Matrix optimal_update(const Matrix& delta) const;

  Matrix B;
  Matrix C;
  Matrix B_pinv;        // m x n
  Matrix C_right_pinv;  // n x p
};

/// Minimizer of ||B G C + Delta||_F over G.
Matrix optimal_update(const Matrix& B, const Matrix& C, const Matrix& delta);

/// g* = -(C^{T+} kron B^+) vec(Delta), built from explicit Kronecker factors.
Vector optimal_update_vectorized(const Matrix& B, const Matrix& C, const Matrix& delta,
                                 Index max_explicit_n = kDefaultExplicitLimit);

/// G* = -vec^{-1}(V_H [Gamma^{-1} 0] U_H^T vec(Delta)) from the pinned SVD factors.
Matrix optimal_update_svd(const Matrix& B, const Matrix& C, const Matrix& delta,
                          Index max_explicit_n = kDefaultExplicitLimit);
Matrix optimal_update_svd(const KroneckerFactors& factors, const Matrix& delta);

/// J* = delta^T P delta. Below the explicit limit P is materialized; above it
/// the complement block of U_H^T delta is summed. Either way the value is
/// checked against ||B G* C + Delta||_F^2 and NumericalInconsistency is thrown
/// on disagreement.
double residual_cost(const Matrix& B, const Matrix& C, const Matrix& delta,
                     Index max_explicit_n = kDefaultExplicitLimit);

/// ||B G C + Delta||_F^2 for an arbitrary G.
double update_cost(const Matrix& B, const Matrix& C, const Matrix& G, const Matrix& delta);

struct UpdateResult {
  Matrix G_star;
  double J_star = 0.0;
  GainMatrix F_updated;
  double alpha_closed = 0.0;  // spectral abscissa of A + Delta + B F_updated C
  bool certified = false;     // beta given and sqrt(J*) < beta
  std::optional<double> beta;
};

/// One closed-form correction: F_updated = F_nominal + G*.
UpdateResult apply_update(const StateSpaceModel& model, const GainMatrix& F_nominal,
                          const Matrix& delta, std::optional<double> beta = std::nullopt);

}  // namespace sofup
