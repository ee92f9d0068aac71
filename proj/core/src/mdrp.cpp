#include "sofup/mdrp.hpp"

#include <atomic>
#include <functional>
#include <cmath>
#include <limits>
#include <vector>

#include "sofup/errors.hpp"
#include "sofup/kron.hpp"
#include "sofup/parallel.hpp"
#include "sofup/random.hpp"

namespace sofup {

namespace {

double require_stable(const Matrix& M) {
  const double alpha = spectral_abscissa(M);
  if (!(alpha < 0.0)) {
    throw Error(ErrorCode::NotStable, "spectral abscissa " + std::to_string(alpha) + " >= 0");
  }
  return alpha;
}

struct SmallestSingular {
  double sigma;
  Vector u;
  Vector v;
};

SmallestSingular smallest_singular(const Matrix& M) {
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index last = svd.singularValues().size() - 1;
  return {svd.singularValues()(last), svd.matrixU().col(last), svd.matrixV().col(last)};
}

constexpr int kRandomProbes = 8;
constexpr double kInitialStep = 0.5;
constexpr double kMinStep = 1e-4;

// Pattern search for max alpha(M + beta * unvec(v)) over unit v. Polls the
// coordinate directions, then a few random ones, and halves the step when
// nothing improves. Stops early once alpha reaches the feasibility threshold or
// `abort` reports that a lower-index restart already succeeded.
struct RestartOutcome {
  double alpha = -std::numeric_limits<double>::infinity();
  Vector v;
};

RestartOutcome local_search(const Matrix& M, double beta, Vector v, Stream& stream,
                            const EstimateOptions& options, const std::function<bool()>& abort) {
  const Index n = M.rows();
  const Index dim = n * n;
  int evaluations = 0;

  auto objective = [&](const Vector& x) {
    ++evaluations;
    return spectral_abscissa(M + beta * unvec(x, n, n));
  };
  auto try_move = [&](const Vector& from, const Vector& direction, double step) {
    Vector x = from + step * direction;
    const double norm = x.norm();
    if (norm < 1e-12) return Vector();
    return Vector(x / norm);
  };

  RestartOutcome best{objective(v), v};
  double step = kInitialStep;
  while (step >= kMinStep && evaluations < options.max_evaluations) {
    if (best.alpha >= options.feasibility_threshold || abort()) break;

    bool improved = false;
    for (Index i = 0; i < dim; ++i) {
      if (best.alpha >= options.feasibility_threshold || evaluations >= options.max_evaluations) {
        break;
      }
      for (const double sign : {1.0, -1.0}) {
        Vector e = Vector::Zero(dim);
        e(i) = sign;
        Vector x = try_move(best.v, e, step);
        if (x.size() == 0) continue;
        const double value = objective(x);
        if (value > best.alpha) {
          best = {value, x};
          improved = true;
          break;
        }
      }
    }
    for (int k = 0; k < kRandomProbes && !improved; ++k) {
      Vector x = try_move(best.v, stream.unit_vector(dim), step);
      if (x.size() == 0) continue;
      const double value = objective(x);
      if (value > best.alpha) {
        best = {value, x};
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

std::string_view to_string(MdrpMethod method) noexcept {
  switch (method) {
    case MdrpMethod::symmetric_exact: return "symmetric_exact";
    case MdrpMethod::bisection: return "bisection";
    case MdrpMethod::upper_bound_only: return "upper_bound_only";
  }
  return "bisection";
}

double upper_bound(const Matrix& M) {
  const double alpha = require_stable(M);
  const double sigma_min = smallest_singular(M).sigma;
  return std::min(sigma_min, -std::sqrt(static_cast<double>(M.rows())) * alpha);
}

Matrix identity_destabilizer(const Matrix& M) {
  const double alpha = require_stable(M);
  return -alpha * Matrix::Identity(M.rows(), M.cols());
}

Matrix singular_destabilizer(const Matrix& M) {
  require_stable(M);
  const SmallestSingular s = smallest_singular(M);
  return -s.sigma * s.u * s.v.transpose();
}

double symmetric_exact(const Matrix& M) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  }
  if ((M - M.transpose()).norm() > 1e-10) {
    throw Error(ErrorCode::NotSymmetric, "||M - M^T||_F exceeds 1e-10");
  }
  return -require_stable(M);
}

InnerSearchResult maximize_abscissa(const Matrix& M, double beta, const EstimateOptions& options,
                                    std::uint64_t step) {
  const Index n = M.rows();
  const int starts = std::max(1, options.inner_starts);
  std::vector<RestartOutcome> outcomes(static_cast<size_t>(starts));
  std::atomic<int> first_feasible{std::numeric_limits<int>::max()};

  parallel_for(static_cast<size_t>(starts), options.threads, [&](std::size_t index) {
    const int r = static_cast<int>(index);
    if (r > first_feasible.load()) return;
    Stream stream(options.seed, step, static_cast<std::uint64_t>(r));
    Vector v;
    if (r == 0) {
      v = vec(singular_destabilizer(M)).normalized();
    } else if (r == 1) {
      v = vec(Matrix::Identity(n, n)).normalized();
    } else {
      v = stream.unit_vector(n * n);
    }
    auto abort = [&] { return r > first_feasible.load(std::memory_order_relaxed); };
    RestartOutcome outcome = local_search(M, beta, std::move(v), stream, options, abort);
    if (outcome.alpha >= options.feasibility_threshold) {
      int current = first_feasible.load();
      while (r < current && !first_feasible.compare_exchange_weak(current, r)) {
      }
    }
    outcomes[index] = std::move(outcome);
  });

  // The lowest-index feasible restart never aborts, so the choice below does
  // not depend on scheduling.
  int chosen = first_feasible.load();
  if (chosen == std::numeric_limits<int>::max()) {
    chosen = 0;
    for (int r = 1; r < starts; ++r) {
      if (outcomes[static_cast<size_t>(r)].alpha > outcomes[static_cast<size_t>(chosen)].alpha) {
        chosen = r;
      }
    }
  }
  const RestartOutcome& best = outcomes[static_cast<size_t>(chosen)];
  return {best.alpha, beta * unvec(best.v, n, n), chosen};
}

MdrpEstimate estimate(const Matrix& M, const EstimateOptions& options) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  }
  const double alpha = require_stable(M);
  const double upper = upper_bound(M);
  const double tol = options.tol ? *options.tol : 1e-3 * upper;
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::DomainError, "bisection tolerance must be positive");
  }

  MdrpEstimate result;
  result.upper = upper;
  result.method = MdrpMethod::bisection;
  result.inner_starts = options.inner_starts;
  result.tol = tol;
  result.seed = options.seed;

  // The upper bound is attained by one of the two explicit destabilizers.
  const double identity_norm = -std::sqrt(static_cast<double>(M.rows())) * alpha;
  result.witness = identity_norm <= upper ? identity_destabilizer(M) : singular_destabilizer(M);
  result.witness_alpha = spectral_abscissa(M + result.witness);

  double lo = 0.0;
  double hi = upper;
  while (hi - lo > tol || lo <= 0.0) {
    if (result.iterations >= options.max_bisections) {
      throw Error(ErrorCode::BudgetExceeded,
                  "bisection bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] still wider than tol after " + std::to_string(result.iterations) +
                      " steps");
    }
    const double mid = 0.5 * (lo + hi);
    const InnerSearchResult inner =
        maximize_abscissa(M, mid, options, static_cast<std::uint64_t>(result.iterations));
    ++result.iterations;
    if (inner.alpha >= options.feasibility_threshold) {
      const double verified = spectral_abscissa(M + inner.perturbation);
      if (verified >= options.feasibility_threshold) {
        hi = mid;
        result.witness = inner.perturbation;
        result.witness_alpha = verified;
        continue;
      }
    }
    lo = mid;
  }
  result.beta = lo;
  return result;
}

}  // namespace sofup
