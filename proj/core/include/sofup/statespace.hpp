#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

namespace sofup {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Singular value decomposition M = U diag(S) V^T, singular values nonincreasing.
struct SvdTriplet {
  Matrix U;
  Vector S;
  Matrix V;
};

/// Full SVD: U is rows x rows and V is cols x cols.
SvdTriplet svd_full(const Matrix& M);

/// Default numerical-rank tolerance: eps * max(rows, cols) * sigma_max.
double default_rank_tolerance(const Matrix& M);
double default_rank_tolerance(const Vector& singular_values, Index rows, Index cols);

/// The linear plant x' = A x + B u, y = C x. Shapes are checked on construction;
/// rank conditions are checked by validate().
class StateSpaceModel {
 public:
  StateSpaceModel(Matrix A, Matrix B, Matrix C);

  [[nodiscard]] const Matrix& A() const noexcept { return A_; }
  [[nodiscard]] const Matrix& B() const noexcept { return B_; }
  [[nodiscard]] const Matrix& C() const noexcept { return C_; }

  [[nodiscard]] Index n() const noexcept { return A_.rows(); }
  [[nodiscard]] Index m() const noexcept { return B_.cols(); }
  [[nodiscard]] Index p() const noexcept { return C_.rows(); }

 private:
  Matrix A_;
  Matrix B_;
  Matrix C_;
};

enum class GainProvenance { nominal, updated, projected, external };

std::string_view to_string(GainProvenance provenance) noexcept;

/// A static output feedback gain u = F y, m x p.
struct GainMatrix {
  Matrix F;
  GainProvenance provenance = GainProvenance::external;
};

/// A known additive perturbation of the state matrix with its Frobenius bound.
class Perturbation {
 public:
  /// rho defaults to the Frobenius norm of delta (or 1 when delta is zero).
  explicit Perturbation(Matrix delta, std::optional<double> rho = std::nullopt);

  [[nodiscard]] const Matrix& delta() const noexcept { return delta_; }
  [[nodiscard]] double fro_norm() const noexcept { return fro_norm_; }
  [[nodiscard]] double rho() const noexcept { return rho_; }

 private:
  Matrix delta_;
  double fro_norm_;
  double rho_;
};

struct ValidationReport {
  Index n = 0;
  Index m = 0;
  Index p = 0;
  Index rank_B = 0;
  Index rank_C = 0;
  double sigma_min_B = 0.0;  // smallest retained singular value
  double sigma_min_C = 0.0;
  double tol_B = 0.0;
  double tol_C = 0.0;
  bool passes = false;
  std::string offending;  // "B", "C", "B,C" or empty
};

/// Computes ranks without throwing. rank_tol overrides the per-matrix default.
ValidationReport rank_report(const StateSpaceModel& model,
                             std::optional<double> rank_tol = std::nullopt);

/// Throws RankDeficient naming the offending matrix when B is not full column
/// rank or C is not full row rank.
ValidationReport validate(const StateSpaceModel& model,
                          std::optional<double> rank_tol = std::nullopt);

/// Maximum real part over the eigenvalues of a square matrix.
double spectral_abscissa(const Matrix& M);

/// True iff spectral_abscissa(M) < -margin. Marginal (alpha == 0) is unstable.
bool is_hurwitz(const Matrix& M, double margin = 0.0);

/// A + B F C, plus delta when given.
Matrix closed_loop(const StateSpaceModel& model, const GainMatrix& gain,
                   const Matrix* delta = nullptr);
Matrix closed_loop(const StateSpaceModel& model, const GainMatrix& gain,
                   const Perturbation& delta);

/// Least-squares output gain F with F C ~= K, i.e. F = K C^T (C C^T)^{-1}.
GainMatrix project_state_feedback(const Matrix& K, const Matrix& C);

}  // namespace sofup
