#pragma once

#include <vector>

#include "sofup/statespace.hpp"

namespace sofup {

// vec stacks columns, so vec(X Y Z) = (Z^T kron X) vec(Y).
Vector vec(const Matrix& M);
Matrix unvec(const Vector& v, Index rows, Index cols);

Matrix kron(const Matrix& A, const Matrix& B);

/// B^+ = (B^T B)^{-1} B^T for full column rank B, formed from a thin SVD.
Matrix left_pinv(const Matrix& B, std::optional<double> rank_tol = std::nullopt);

/// C^T (C C^T)^{-1} for full row rank C, formed from a thin SVD.
Matrix right_pinv(const Matrix& C, std::optional<double> rank_tol = std::nullopt);

/// Largest n for which n^2 x n^2 objects (H, P, U_H) are materialized.
inline constexpr Index kDefaultExplicitLimit = 64;

/// SVD factors of B and C, computed once and reused so that every coordinate
/// map agrees on the sign and ordering of singular vectors.
///
/// With B = U_B S_B V_B^T and C = U_C S_C V_C^T, the matrix
/// Omega = S_C^T kron S_B has exactly mp nonzeros sitting in distinct rows and
/// columns, so its SVD is a pair of permutations. H = C^T kron B then factors as
/// U_H = (V_C kron U_B) U_Omega, V_H = (U_C kron V_B) V_Omega. The first mp
/// columns of U_H span range(H).
class KroneckerFactors {
 public:
  KroneckerFactors(const Matrix& B, const Matrix& C,
                   std::optional<double> rank_tol = std::nullopt);

  [[nodiscard]] Index n() const noexcept { return n_; }
  [[nodiscard]] Index m() const noexcept { return m_; }
  [[nodiscard]] Index p() const noexcept { return p_; }
  [[nodiscard]] Index range_dim() const noexcept { return m_ * p_; }
  [[nodiscard]] Index complement_dim() const noexcept { return n_ * n_ - m_ * p_; }

  [[nodiscard]] const SvdTriplet& svd_B() const noexcept { return svd_B_; }
  [[nodiscard]] const SvdTriplet& svd_C() const noexcept { return svd_C_; }

  /// Nonzero singular values of Omega (= of H), nonincreasing, length mp.
  [[nodiscard]] const Vector& sigma() const noexcept { return sigma_; }

  /// Column k of U_Omega is the unit vector e_{omega_row(k)} of R^{n^2}.
  [[nodiscard]] Index omega_row(Index k) const { return omega_rows_[static_cast<size_t>(k)]; }
  /// Column k of V_Omega is the unit vector e_{omega_col(k)} of R^{mp}.
  [[nodiscard]] Index omega_col(Index k) const { return omega_cols_[static_cast<size_t>(k)]; }

  /// U_H^T vec(delta) without forming U_H: gather from U_B^T delta V_C.
  [[nodiscard]] Vector to_range_coords(const Matrix& delta) const;
  /// vec^{-1}(U_H chi) without forming U_H: scatter, then U_B (.) V_C^T.
  [[nodiscard]] Matrix from_range_coords(const Vector& chi) const;

  // Explicit factors; these allocate n^2 x n^2 storage.
  [[nodiscard]] Matrix U_omega() const;
  [[nodiscard]] Matrix V_omega() const;
  [[nodiscard]] Matrix Sigma_omega() const;
  [[nodiscard]] Matrix U_H() const;
  [[nodiscard]] Matrix V_H() const;

 private:
  Index n_;
  Index m_;
  Index p_;
  SvdTriplet svd_B_;
  SvdTriplet svd_C_;
  Vector sigma_;
  std::vector<Index> omega_rows_;
  std::vector<Index> omega_cols_;
};

}  // namespace sofup
