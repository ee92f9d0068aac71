#include "sofup/update.hpp"

#include <algorithm>
#include <cmath>

#include "sofup/errors.hpp"

namespace sofup {

namespace {

void check_explicit_size(Index n, Index max_explicit_n) {
  if (n > max_explicit_n) {
    throw Error(ErrorCode::DimensionOverflow,
                "n = " + std::to_string(n) + " exceeds the explicit n^2 x n^2 limit of " +
                    std::to_string(max_explicit_n));
  }
}

void check_update_shapes(const Matrix& B, const Matrix& C, const Matrix& delta) {
  if (C.cols() != B.rows() || delta.rows() != B.rows() || delta.cols() != B.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "need B: n x m, C: p x n, Delta: n x n");
  }
}

}  // namespace

Matrix projector_direct(const Matrix& H) {
  const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(H);
  return Matrix::Identity(H.rows(), H.rows()) - H * cod.pseudoInverse();
}

Matrix projector_factored(const KroneckerFactors& factors) {
  const Matrix U = factors.U_H();
  const auto tail = U.rightCols(factors.complement_dim());
  return tail * tail.transpose();
}

Projector Projector::build(const Matrix& B, const Matrix& C, const ProjectorOptions& options) {
  check_explicit_size(B.rows(), options.max_explicit_n);
  KroneckerFactors factors(B, C, options.rank_tol);
  Matrix H = kron(C.transpose(), B);
  Matrix P = projector_factored(factors);
  const double gap = (projector_direct(H) - P).norm();
  return Projector(std::move(factors), std::move(H), std::move(P), gap);
}

double Projector::quadratic_form(const Matrix& delta) const {
  const Vector d = vec(delta);
  if (d.size() != P_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "Delta does not match the projector size");
  }
  return d.dot(P_ * d);
}

GainUpdater::GainUpdater(const Matrix& B_, const Matrix& C_, std::optional<double> rank_tol)
    : B(B_), C(C_), B_pinv(left_pinv(B_, rank_tol)), C_right_pinv(right_pinv(C_, rank_tol)) {
  if (C.cols() != B.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "B rows and C columns differ");
  }
}

Matrix GainUpdater::optimal_update(const Matrix& delta) const {
  if (delta.rows() != B.rows() || delta.cols() != B.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "Delta must be n x n");
  }
  // n^2 min(m, p): contract the n x n product against the thinner factor first.
  if (B_pinv.rows() <= C_right_pinv.cols()) {
    return -(B_pinv * delta) * C_right_pinv;
  }
  return -B_pinv * (delta * C_right_pinv);
}

Matrix optimal_update(const Matrix& B, const Matrix& C, const Matrix& delta) {
  check_update_shapes(B, C, delta);
  return GainUpdater(B, C).optimal_update(delta);
}

Vector optimal_update_vectorized(const Matrix& B, const Matrix& C, const Matrix& delta,
                                 Index max_explicit_n) {
  check_update_shapes(B, C, delta);
  check_explicit_size(B.rows(), max_explicit_n);
  const Matrix Ct_pinv = right_pinv(C).transpose();  // (C C^T)^{-1} C, p x n
  return -kron(Ct_pinv, left_pinv(B)) * vec(delta);
}

Matrix optimal_update_svd(const KroneckerFactors& factors, const Matrix& delta) {
  const Index mp = factors.range_dim();
  const Vector chi = factors.U_H().transpose() * vec(delta);
  const Vector scaled = chi.head(mp).cwiseQuotient(factors.sigma());
  return -unvec(factors.V_H() * scaled, factors.m(), factors.p());
}

Matrix optimal_update_svd(const Matrix& B, const Matrix& C, const Matrix& delta,
                          Index max_explicit_n) {
  check_update_shapes(B, C, delta);
  check_explicit_size(B.rows(), max_explicit_n);
  return optimal_update_svd(KroneckerFactors(B, C), delta);
}

double update_cost(const Matrix& B, const Matrix& C, const Matrix& G, const Matrix& delta) {
  return (B * G * C + delta).squaredNorm();
}

double residual_cost(const Matrix& B, const Matrix& C, const Matrix& delta, Index max_explicit_n) {
  check_update_shapes(B, C, delta);
  double J = 0.0;
  if (B.rows() <= max_explicit_n) {
    J = Projector::build(B, C, {max_explicit_n, std::nullopt}).quadratic_form(delta);
  } else {
    const KroneckerFactors factors(B, C);
    J = factors.to_range_coords(delta).tail(factors.complement_dim()).squaredNorm();
  }
  const double direct = update_cost(B, C, optimal_update(B, C, delta), delta);
  const double scale = std::max(1.0, delta.squaredNorm());
  if (std::abs(J - direct) > 1e-8 * scale) {
    throw Error(ErrorCode::NumericalInconsistency,
                "delta^T P delta = " + std::to_string(J) + " but ||B G* C + Delta||^2 = " +
                    std::to_string(direct));
  }
  return std::max(J, 0.0);
}

UpdateResult apply_update(const StateSpaceModel& model, const GainMatrix& F_nominal,
                          const Matrix& delta, std::optional<double> beta) {
  if (F_nominal.F.rows() != model.m() || F_nominal.F.cols() != model.p()) {
    throw Error(ErrorCode::DimensionMismatch, "F_nominal must be m x p");
  }
  if (delta.rows() != model.n() || delta.cols() != model.n()) {
    throw Error(ErrorCode::DimensionMismatch, "Delta must be n x n");
  }
  if (beta && !(*beta > 0.0)) {
    throw Error(ErrorCode::DomainError, "beta must be positive");
  }

  UpdateResult result;
  result.G_star = optimal_update(model.B(), model.C(), delta);
  result.J_star = update_cost(model.B(), model.C(), result.G_star, delta);
  result.F_updated = {F_nominal.F + result.G_star, GainProvenance::updated};
  result.alpha_closed = spectral_abscissa(closed_loop(model, result.F_updated, &delta));
  result.beta = beta;
  result.certified = beta.has_value() && std::sqrt(result.J_star) < *beta;
  return result;
}

}  // namespace sofup
