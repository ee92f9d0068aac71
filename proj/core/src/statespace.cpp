#include "sofup/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sofup/errors.hpp"
#include "sofup/kron.hpp"

namespace sofup {

namespace {

std::string shape(const Matrix& M) {
  return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

void require_finite(const Matrix& M, const char* name) {
  if (!M.allFinite()) {
    throw Error(ErrorCode::DomainError, std::string(name) + " has non-finite entries");
  }
}

struct RankInfo {
  Index rank = 0;
  double sigma_min = 0.0;
  double tol = 0.0;
};

RankInfo numerical_rank(const Matrix& M, std::optional<double> rank_tol) {
  RankInfo info;
  if (M.size() == 0) return info;
  Eigen::JacobiSVD<Matrix> svd(M);
  const Vector& s = svd.singularValues();
  info.tol = rank_tol ? *rank_tol : default_rank_tolerance(s, M.rows(), M.cols());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > info.tol) {
      info.rank = i + 1;
      info.sigma_min = s(i);
    }
  }
  return info;
}

}  // namespace

SvdTriplet svd_full(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double default_rank_tolerance(const Vector& singular_values, Index rows, Index cols) {
  const double smax = singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(rows, cols)) * smax;
}

double default_rank_tolerance(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M);
  return default_rank_tolerance(svd.singularValues(), M.rows(), M.cols());
}

StateSpaceModel::StateSpaceModel(Matrix A, Matrix B, Matrix C)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
  if (A_.rows() == 0 || A_.rows() != A_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "A must be square and nonempty, got " + shape(A_));
  }
  if (B_.rows() != A_.rows() || B_.cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "B must be n x m with n = " + std::to_string(A_.rows()) + ", got " + shape(B_));
  }
  if (C_.cols() != A_.rows() || C_.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "C must be p x n with n = " + std::to_string(A_.rows()) + ", got " + shape(C_));
  }
  require_finite(A_, "A");
  require_finite(B_, "B");
  require_finite(C_, "C");
}

std::string_view to_string(GainProvenance provenance) noexcept {
  switch (provenance) {
    case GainProvenance::nominal: return "nominal";
    case GainProvenance::updated: return "updated";
    case GainProvenance::projected: return "projected";
    case GainProvenance::external: return "external";
  }
  return "external";
}

Perturbation::Perturbation(Matrix delta, std::optional<double> rho)
    : delta_(std::move(delta)), fro_norm_(0.0), rho_(0.0) {
  if (delta_.rows() != delta_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Delta must be square, got " + shape(delta_));
  }
  require_finite(delta_, "Delta");
  fro_norm_ = delta_.norm();
  if (rho) {
    if (!(*rho > 0.0) || !std::isfinite(*rho)) {
      throw Error(ErrorCode::DomainError, "rho must be positive and finite");
    }
    if (fro_norm_ > *rho * (1.0 + 1e-12)) {
      throw Error(ErrorCode::NormExceedsBound,
                  "||Delta||_F = " + std::to_string(fro_norm_) + " exceeds rho = " +
                      std::to_string(*rho));
    }
    rho_ = *rho;
  } else {
    rho_ = fro_norm_ > 0.0 ? fro_norm_ : 1.0;
  }
}

ValidationReport rank_report(const StateSpaceModel& model, std::optional<double> rank_tol) {
  ValidationReport report;
  report.n = model.n();
  report.m = model.m();
  report.p = model.p();

  const RankInfo b = numerical_rank(model.B(), rank_tol);
  const RankInfo c = numerical_rank(model.C(), rank_tol);
  report.rank_B = b.rank;
  report.rank_C = c.rank;
  report.sigma_min_B = b.sigma_min;
  report.sigma_min_C = c.sigma_min;
  report.tol_B = b.tol;
  report.tol_C = c.tol;

  const bool b_ok = report.m <= report.n && b.rank == report.m;
  const bool c_ok = report.p <= report.n && c.rank == report.p;
  if (!b_ok && !c_ok) {
    report.offending = "B,C";
  } else if (!b_ok) {
    report.offending = "B";
  } else if (!c_ok) {
    report.offending = "C";
  }
  report.passes = b_ok && c_ok;
  return report;
}

ValidationReport validate(const StateSpaceModel& model, std::optional<double> rank_tol) {
  ValidationReport report = rank_report(model, rank_tol);
  if (!report.passes) {
    throw Error(ErrorCode::RankDeficient,
                report.offending + " (rank(B) = " + std::to_string(report.rank_B) +
                    " of m = " + std::to_string(report.m) + ", rank(C) = " +
                    std::to_string(report.rank_C) + " of p = " + std::to_string(report.p) + ")");
  }
  return report;
}

double spectral_abscissa(const Matrix& M) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "spectral abscissa needs a square matrix, got " + shape(M));
  }
  if (!M.allFinite()) {
    throw Error(ErrorCode::EigenFailure, "matrix has non-finite entries");
  }
  Eigen::EigenSolver<Matrix> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "real Schur iteration did not converge");
  }
  return solver.eigenvalues().real().maxCoeff();
}

bool is_hurwitz(const Matrix& M, double margin) {
  if (!(margin >= 0.0)) {
    throw Error(ErrorCode::DomainError, "Hurwitz margin must be nonnegative");
  }
  return spectral_abscissa(M) < -margin;
}

Matrix closed_loop(const StateSpaceModel& model, const GainMatrix& gain, const Matrix* delta) {
  if (gain.F.rows() != model.m() || gain.F.cols() != model.p()) {
    throw Error(ErrorCode::DimensionMismatch,
                "gain must be " + std::to_string(model.m()) + "x" + std::to_string(model.p()) +
                    ", got " + shape(gain.F));
  }
  Matrix M = model.A() + model.B() * gain.F * model.C();
  if (delta != nullptr) {
    if (delta->rows() != model.n() || delta->cols() != model.n()) {
      throw Error(ErrorCode::DimensionMismatch, "Delta must be n x n, got " + shape(*delta));
    }
    M += *delta;
  }
  return M;
}

Matrix closed_loop(const StateSpaceModel& model, const GainMatrix& gain, const Perturbation& delta) {
  return closed_loop(model, gain, &delta.delta());
}

GainMatrix project_state_feedback(const Matrix& K, const Matrix& C) {
  if (K.cols() != C.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "K must have n = " + std::to_string(C.cols()) + " columns, got " + shape(K));
  }
  return {K * right_pinv(C), GainProvenance::projected};
}

}  // namespace sofup
