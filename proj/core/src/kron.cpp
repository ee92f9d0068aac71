#include "sofup/kron.hpp"

#include <algorithm>
#include <numeric>

#include "sofup/errors.hpp"

namespace sofup {

namespace {

// Thin SVD with a full-rank check along the short dimension.
Eigen::JacobiSVD<Matrix> checked_thin_svd(const Matrix& M, std::optional<double> rank_tol,
                                          const char* name) {
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double tol = rank_tol ? *rank_tol : default_rank_tolerance(s, M.rows(), M.cols());
  const Index short_dim = std::min(M.rows(), M.cols());
  if (s.size() < short_dim || short_dim == 0 || s(short_dim - 1) <= tol) {
    throw Error(ErrorCode::RankDeficient,
                std::string(name) + " is numerically rank deficient (sigma_min = " +
                    std::to_string(s.size() ? s(s.size() - 1) : 0.0) +
                    ", tol = " + std::to_string(tol) + ")");
  }
  return svd;
}

}  // namespace

Vector vec(const Matrix& M) {
  return Eigen::Map<const Vector>(M.data(), M.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "unvec: length " + std::to_string(v.size()) +
                                                  " does not match " + std::to_string(rows) + "x" +
                                                  std::to_string(cols));
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

Matrix left_pinv(const Matrix& B, std::optional<double> rank_tol) {
  if (B.cols() > B.rows()) {
    throw Error(ErrorCode::RankDeficient, "B has more columns than rows");
  }
  const auto svd = checked_thin_svd(B, rank_tol, "B");
  return svd.matrixV() * svd.singularValues().cwiseInverse().asDiagonal() *
         svd.matrixU().transpose();
}

Matrix right_pinv(const Matrix& C, std::optional<double> rank_tol) {
  if (C.rows() > C.cols()) {
    throw Error(ErrorCode::RankDeficient, "C has more rows than columns");
  }
  const auto svd = checked_thin_svd(C, rank_tol, "C");
  return svd.matrixV() * svd.singularValues().cwiseInverse().asDiagonal() *
         svd.matrixU().transpose();
}

KroneckerFactors::KroneckerFactors(const Matrix& B, const Matrix& C, std::optional<double> rank_tol)
    : n_(B.rows()), m_(B.cols()), p_(C.rows()) {
  if (C.cols() != n_) {
    throw Error(ErrorCode::DimensionMismatch, "B has " + std::to_string(n_) +
                                                  " rows but C has " + std::to_string(C.cols()) +
                                                  " columns");
  }
  if (m_ > n_ || p_ > n_) {
    throw Error(ErrorCode::RankDeficient, m_ > n_ ? "B has more columns than rows"
                                                  : "C has more rows than columns");
  }
  svd_B_ = svd_full(B);
  svd_C_ = svd_full(C);
  const double tol_b =
      rank_tol ? *rank_tol : default_rank_tolerance(svd_B_.S, B.rows(), B.cols());
  const double tol_c =
      rank_tol ? *rank_tol : default_rank_tolerance(svd_C_.S, C.rows(), C.cols());
  if (m_ == 0 || svd_B_.S(m_ - 1) <= tol_b) {
    throw Error(ErrorCode::RankDeficient, "B is not full column rank");
  }
  if (p_ == 0 || svd_C_.S(p_ - 1) <= tol_c) {
    throw Error(ErrorCode::RankDeficient, "C is not full row rank");
  }

  // Omega = S_C^T kron S_B: entry c_j * b_i sits at row j*n + i, column j*m + i.
  struct Entry {
    double value;
    Index row;
    Index col;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<size_t>(m_ * p_));
  for (Index j = 0; j < p_; ++j) {
    for (Index i = 0; i < m_; ++i) {
      entries.push_back({svd_C_.S(j) * svd_B_.S(i), j * n_ + i, j * m_ + i});
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.value > b.value; });

  sigma_.resize(m_ * p_);
  omega_rows_.reserve(static_cast<size_t>(n_ * n_));
  omega_cols_.reserve(static_cast<size_t>(m_ * p_));
  std::vector<bool> used(static_cast<size_t>(n_ * n_), false);
  for (size_t k = 0; k < entries.size(); ++k) {
    sigma_(static_cast<Index>(k)) = entries[k].value;
    omega_rows_.push_back(entries[k].row);
    omega_cols_.push_back(entries[k].col);
    used[static_cast<size_t>(entries[k].row)] = true;
  }
  for (Index r = 0; r < n_ * n_; ++r) {
    if (!used[static_cast<size_t>(r)]) omega_rows_.push_back(r);
  }
}

Vector KroneckerFactors::to_range_coords(const Matrix& delta) const {
  if (delta.rows() != n_ || delta.cols() != n_) {
    throw Error(ErrorCode::DimensionMismatch, "Delta must be n x n");
  }
  const Matrix X = svd_B_.U.transpose() * delta * svd_C_.V;
  Vector chi(n_ * n_);
  for (Index k = 0; k < n_ * n_; ++k) {
    chi(k) = X.data()[omega_rows_[static_cast<size_t>(k)]];
  }
  return chi;
}

Matrix KroneckerFactors::from_range_coords(const Vector& chi) const {
  if (chi.size() != n_ * n_) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector must have length n^2");
  }
  Matrix X(n_, n_);
  for (Index k = 0; k < n_ * n_; ++k) {
    X.data()[omega_rows_[static_cast<size_t>(k)]] = chi(k);
  }
  return svd_B_.U * X * svd_C_.V.transpose();
}

Matrix KroneckerFactors::U_omega() const {
  const Index nn = n_ * n_;
  Matrix U = Matrix::Zero(nn, nn);
  for (Index k = 0; k < nn; ++k) U(omega_rows_[static_cast<size_t>(k)], k) = 1.0;
  return U;
}

Matrix KroneckerFactors::V_omega() const {
  const Index mp = m_ * p_;
  Matrix V = Matrix::Zero(mp, mp);
  for (Index k = 0; k < mp; ++k) V(omega_cols_[static_cast<size_t>(k)], k) = 1.0;
  return V;
}

Matrix KroneckerFactors::Sigma_omega() const {
  Matrix S = Matrix::Zero(n_ * n_, m_ * p_);
  S.topLeftCorner(m_ * p_, m_ * p_) = sigma_.asDiagonal();
  return S;
}

Matrix KroneckerFactors::U_H() const { return kron(svd_C_.V, svd_B_.U) * U_omega(); }

Matrix KroneckerFactors::V_H() const { return kron(svd_C_.U, svd_B_.V) * V_omega(); }

}  // namespace sofup
