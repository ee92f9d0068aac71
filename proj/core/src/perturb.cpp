#include "sofup/perturb.hpp"

#include <cmath>
#include <numbers>

#include "sofup/errors.hpp"

namespace sofup {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kBlockFloor = 1e-12;

void check_tau_theta(double tau, double theta) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::DomainError, "tau must lie in (0, 1], got " + std::to_string(tau));
  }
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::DomainError, "theta must lie in [0, 1], got " + std::to_string(theta));
  }
}

void check_unit(const Vector& phi, Index expected, const char* name) {
  if (phi.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch, std::string(name) + " must have length " +
                                                  std::to_string(expected));
  }
  if (expected > 0 && std::abs(phi.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::DomainError, std::string(name) + " must be a unit vector");
  }
}

Vector canonical(Index dim) {
  Vector e = Vector::Zero(dim);
  if (dim > 0) e(0) = 1.0;
  return e;
}

}  // namespace

Perturbation synthesize(const KroneckerFactors& factors, const PerturbationCoords& coords) {
  if (!(coords.rho > 0.0)) {
    throw Error(ErrorCode::DomainError, "rho must be positive");
  }
  check_tau_theta(coords.tau, coords.theta);
  const Index mp = factors.range_dim();
  const Index rest = factors.complement_dim();
  if (rest == 0 && coords.theta > 0.0) {
    throw Error(ErrorCode::DegenerateCoverage,
                "mp = n^2 leaves no uncancellable block, theta must be 0");
  }
  check_unit(coords.phi_c, mp, "phi_c");
  check_unit(coords.phi_s, rest, "phi_s");

  Vector psi(mp + rest);
  psi.head(mp) = coords.phi_c * std::cos(kHalfPi * coords.theta);
  if (rest > 0) psi.tail(rest) = coords.phi_s * std::sin(kHalfPi * coords.theta);
  const double r = coords.rho * std::sin(kHalfPi * coords.tau);
  return Perturbation(factors.from_range_coords(r * psi), coords.rho);
}

Perturbation synthesize(const Matrix& B, const Matrix& C, const PerturbationCoords& coords) {
  return synthesize(KroneckerFactors(B, C), coords);
}

PerturbationCoords analyze(const KroneckerFactors& factors, const Perturbation& delta) {
  const double r = delta.fro_norm();
  if (!(r > 0.0)) {
    throw Error(ErrorCode::ZeroPerturbation, "||Delta||_F is zero");
  }
  if (r > delta.rho() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::NormExceedsBound, "||Delta||_F exceeds rho");
  }
  const Index mp = factors.range_dim();
  const Index rest = factors.complement_dim();
  const Vector psi = factors.to_range_coords(delta.delta()) / r;
  const Vector mu = psi.head(mp);
  const Vector nu = psi.tail(rest);
  const double mu_norm = mu.norm();
  const double nu_norm = nu.norm();

  PerturbationCoords coords;
  coords.rho = delta.rho();
  coords.tau = std::asin(std::min(1.0, r / delta.rho())) / kHalfPi;
  coords.theta = std::atan2(nu_norm, mu_norm) / kHalfPi;
  coords.phi_c = mu_norm > kBlockFloor ? Vector(mu / mu_norm) : canonical(mp);
  coords.phi_s = nu_norm > kBlockFloor ? Vector(nu / nu_norm) : canonical(rest);
  if (nu_norm <= kBlockFloor) coords.theta = 0.0;
  if (mu_norm <= kBlockFloor) coords.theta = 1.0;
  return coords;
}

PerturbationCoords analyze(const Perturbation& delta, const Matrix& B, const Matrix& C) {
  return analyze(KroneckerFactors(B, C), delta);
}

double closed_form_cost(double rho, double tau, double theta) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::DomainError, "rho must be positive");
  }
  check_tau_theta(tau, theta);
  const double root = rho * std::sin(kHalfPi * tau) * std::sin(kHalfPi * theta);
  return root * root;
}

PerturbationCoords random_coords(const KroneckerFactors& factors, double rho, double tau,
                                 double theta, Stream& stream) {
  PerturbationCoords coords;
  coords.rho = rho;
  coords.tau = tau;
  coords.theta = theta;
  coords.phi_c = stream.unit_vector(factors.range_dim());
  coords.phi_s = stream.unit_vector(factors.complement_dim());
  return coords;
}

}  // namespace sofup
