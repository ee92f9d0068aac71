#include "sofup/region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sofup/errors.hpp"

namespace sofup {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

void check_beta_rho_open(double beta, double rho) {
  if (!(beta > 0.0 && rho > 0.0 && beta < rho) || !std::isfinite(rho)) {
    throw Error(ErrorCode::DomainError, "need 0 < beta < rho, got beta = " + std::to_string(beta) +
                                            ", rho = " + std::to_string(rho));
  }
}

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
};

// Integrates f(s) over [0, upper] with tau = kappa + s^2 in mind: the
// integrands vary on the scale sqrt(kappa) near s = 0, so the interval is cut
// at geometrically growing multiples of sqrt(kappa) before adaptive
// Gauss-Kronrod refinement.
template <class F>
Quadrature integrate_s(F f, double kappa, double upper) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> cuts{0.0};
  for (double s = std::sqrt(kappa); s < upper; s *= 4.0) {
    if (s > cuts.back() * 1.0000001 && s > 0.0) cuts.push_back(s);
  }
  cuts.push_back(upper);

  Quadrature total;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    total.value += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-11, &err);
    total.error += err;
  }
  return total;
}

// I(kappa) = int_kappa^1 dtau / sqrt(sin^2(pi tau/2) - sin^2(pi kappa/2)),
// after tau = kappa + s^2 and sin^2 x - sin^2 y = sin(x - y) sin(x + y).
double inverse_root_integral(double kappa) {
  const double upper = std::sqrt(1.0 - kappa);
  if (upper <= 0.0) return 0.0;
  auto integrand = [kappa](double s) {
    if (s <= 0.0) return 2.0 / std::sqrt(kHalfPi * std::sin(kPi * kappa));
    const double half = kHalfPi * s * s;
    return 2.0 * s / std::sqrt(std::sin(half) * std::sin(kPi * kappa + half));
  };
  const Quadrature q = integrate_s(integrand, kappa, upper);
  if (!std::isfinite(q.value) || q.error > 1e-9 * std::max(1.0, std::abs(q.value))) {
    throw Error(ErrorCode::QuadratureFailure,
                "derivative integral did not converge (error estimate " + std::to_string(q.error) +
                    ")");
  }
  return q.value;
}

}  // namespace

double kappa(double beta, double rho) {
  if (!(beta > 0.0) || !(rho > 0.0) || beta > rho) {
    throw Error(ErrorCode::DomainError, "kappa needs 0 < beta <= rho, got beta = " +
                                            std::to_string(beta) + ", rho = " + std::to_string(rho));
  }
  return std::asin(beta / rho) / kHalfPi;
}

double zeta(double tau, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0) || !(tau >= kappa && tau <= 1.0)) {
    throw Error(ErrorCode::DomainError, "zeta needs 0 < kappa <= tau <= 1, got tau = " +
                                            std::to_string(tau) + ", kappa = " +
                                            std::to_string(kappa));
  }
  const double ratio = std::sin(kHalfPi * kappa) / std::sin(kHalfPi * tau);
  return std::asin(std::min(1.0, ratio)) / kHalfPi;
}

StabilityRegion::StabilityRegion(double beta, double rho)
    : beta_(beta), rho_(rho), kappa_(1.0), full_square_(false) {
  if (!(beta > 0.0) || !(rho > 0.0) || !std::isfinite(beta) || !std::isfinite(rho)) {
    throw Error(ErrorCode::DomainError, "beta and rho must be positive and finite");
  }
  full_square_ = rho < beta;
  if (!full_square_) kappa_ = sofup::kappa(beta, rho);
}

bool StabilityRegion::contains(double tau, double theta) const {
  if (!(tau > 0.0 && tau <= 1.0) || !(theta >= 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::DomainError, "(tau, theta) must lie in (0,1] x [0,1]");
  }
  if (full_square_) return true;
  if (tau < kappa_) return true;
  return theta < zeta(tau, kappa_);
}

bool contains(double tau, double theta, const StabilityRegion& region) {
  return region.contains(tau, theta);
}

bool satisfies_sufficient_condition(double tau, double theta, double beta, double rho) {
  return std::sin(kHalfPi * tau) * std::sin(kHalfPi * theta) < beta / rho;
}

double xi(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::DomainError, "xi needs kappa in (0, 1], got " + std::to_string(kappa));
  }
  const double upper = std::sqrt(1.0 - kappa);
  if (upper <= 0.0) return 1.0;
  const double sin_kappa = std::sin(kHalfPi * kappa);
  auto integrand = [kappa, sin_kappa](double s) {
    const double ratio = sin_kappa / std::sin(kHalfPi * (kappa + s * s));
    return 2.0 * s * std::asin(std::min(1.0, ratio)) / kHalfPi;
  };
  const Quadrature q = integrate_s(integrand, kappa, upper);
  if (!std::isfinite(q.value) || q.error > 1e-8) {
    throw Error(ErrorCode::QuadratureFailure,
                "area integral error estimate " + std::to_string(q.error) + " exceeds 1e-8");
  }
  return std::clamp(kappa + q.value, 0.0, 1.0);
}

double xi(double beta, double rho) {
  const StabilityRegion region(beta, rho);
  return region.full_square() ? 1.0 : xi(region.kappa());
}

double dxi_drho(double beta, double rho) {
  check_beta_rho_open(beta, rho);
  const double q = beta / rho;
  return -(2.0 / (kPi * rho)) * q * inverse_root_integral(kappa(beta, rho));
}

double dxi_dbeta(double beta, double rho) {
  check_beta_rho_open(beta, rho);
  return (2.0 / (kPi * rho)) * inverse_root_integral(kappa(beta, rho));
}

std::vector<std::pair<double, double>> boundary(const StabilityRegion& region, int points) {
  std::vector<std::pair<double, double>> out;
  if (region.full_square() || points <= 0) return out;
  const double k = region.kappa();
  if (points == 1) {
    out.emplace_back(k, 1.0);
    return out;
  }
  out.reserve(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double tau = i + 1 == points ? 1.0 : k + (1.0 - k) * i / (points - 1);
    out.emplace_back(tau, zeta(tau, k));
  }
  return out;
}

}  // namespace sofup
