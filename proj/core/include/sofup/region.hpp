#pragma once

#include <utility>
#include <vector>

namespace sofup {

/// (2/pi) arcsin(beta / rho), for 0 < beta <= rho.
double kappa(double beta, double rho);

/// Upper theta boundary (2/pi) arcsin(sin(pi kappa/2) / sin(pi tau/2)), kappa <= tau <= 1.
double zeta(double tau, double kappa);

/// Guaranteed stability region in (tau, theta) space for an MDRP value beta
/// and a perturbation bound rho. When rho < beta every (tau, theta) in
/// (0,1] x [0,1] is covered (full_square); otherwise the region is
/// {tau < kappa} union {kappa <= tau <= 1, theta < zeta(tau, kappa)}.
class StabilityRegion {
 public:
  StabilityRegion(double beta, double rho);

  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double rho() const noexcept { return rho_; }
  /// 1 when full_square.
  [[nodiscard]] double kappa() const noexcept { return kappa_; }
  [[nodiscard]] bool full_square() const noexcept { return full_square_; }

  [[nodiscard]] bool contains(double tau, double theta) const;

 private:
  double beta_;
  double rho_;
  double kappa_;
  bool full_square_;
};

bool contains(double tau, double theta, const StabilityRegion& region);

/// sin(pi tau/2) sin(pi theta/2) < beta / rho, evaluated without the region geometry.
bool satisfies_sufficient_condition(double tau, double theta, double beta, double rho);

/// Area of the region relative to the unit square, as a fraction in [0, 1].
double xi(double kappa);
/// xi for (beta, rho), including the full-square case rho < beta.
double xi(double beta, double rho);

/// d xi / d rho at fixed beta, 0 < beta < rho. Nonpositive.
double dxi_drho(double beta, double rho);
/// d xi / d beta at fixed rho, 0 < beta < rho. Nonnegative.
double dxi_dbeta(double beta, double rho);

/// Points (tau, zeta(tau, kappa)) on `points` equally spaced tau in [kappa, 1].
std::vector<std::pair<double, double>> boundary(const StabilityRegion& region, int points);

}  // namespace sofup
