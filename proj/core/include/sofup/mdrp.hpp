#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sofup/statespace.hpp"

namespace sofup {

// Minimum destabilizing real perturbation (MDRP) of a stable matrix M: the
// smallest ||X||_F with alpha(M + X) = 0.

/// min{sigma_min(M), -sqrt(n) alpha(M)}. Throws NotStable unless alpha(M) < 0.
double upper_bound(const Matrix& M);

/// X = -alpha(M) I, so alpha(M + X) = 0 and ||X||_F = -sqrt(n) alpha(M).
Matrix identity_destabilizer(const Matrix& M);

/// X = -sigma_min u_min v_min^T, so M + X is singular and ||X||_F = sigma_min(M).
Matrix singular_destabilizer(const Matrix& M);

/// Exact MDRP -alpha(M) of a stable symmetric matrix.
double symmetric_exact(const Matrix& M);

enum class MdrpMethod { symmetric_exact, bisection, upper_bound_only };

std::string_view to_string(MdrpMethod method) noexcept;

struct EstimateOptions {
  std::optional<double> tol;  // bracket width; default 1e-3 * upper_bound(M)
  std::uint64_t seed = 0;
  int inner_starts = 20;
  int max_bisections = 60;
  int max_evaluations = 20000;          // per restart
  double feasibility_threshold = -1e-9;  // alpha* at or above this counts as destabilized
  std::size_t threads = 0;              // 0 = default_threads()
};

struct MdrpEstimate {
  double beta = 0.0;   // largest trial norm with no destabilizer found
  double upper = 0.0;  // upper_bound(M)
  MdrpMethod method = MdrpMethod::bisection;
  int iterations = 0;
  int inner_starts = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  /// Smallest-norm destabilizer found (norm = the upper bracket end), with its
  /// spectral abscissa re-evaluated directly.
  Matrix witness;
  double witness_alpha = 0.0;
};

/// Best alpha(M + beta * unvec(v / ||v||)) found by derivative-free multi-start
/// search on the unit sphere, for a single trial norm beta.
struct InnerSearchResult {
  double alpha = 0.0;
  Matrix perturbation;  // beta * unvec(v / ||v||)
  int restart = -1;     // index of the restart that produced it
};

InnerSearchResult maximize_abscissa(const Matrix& M, double beta, const EstimateOptions& options,
                                    std::uint64_t step);

/// Bisection on beta over (0, upper_bound(M)], shrinking whenever the inner
/// search destabilizes M and growing otherwise. Returns the lower bracket end.
MdrpEstimate estimate(const Matrix& M, const EstimateOptions& options = {});

}  // namespace sofup
