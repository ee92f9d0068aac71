#pragma once

#include "sofup/kron.hpp"
#include "sofup/random.hpp"
#include "sofup/statespace.hpp"

namespace sofup {

/// Polar-style coordinates of a norm-bounded perturbation relative to
/// range(C^T kron B): ||Delta||_F = rho sin(pi tau / 2), and theta splits the
/// unit direction between the cancellable block (phi_c, length mp) and the
/// uncancellable block (phi_s, length n^2 - mp).
struct PerturbationCoords {
  double rho = 1.0;
  double tau = 1.0;
  double theta = 0.0;
  Vector phi_c;
  Vector phi_s;
};

/// Builds Delta = rho sin(pi tau/2) U_B vec^{-1}(U_Omega [phi_c cos; phi_s sin]) V_C^T.
Perturbation synthesize(const KroneckerFactors& factors, const PerturbationCoords& coords);
Perturbation synthesize(const Matrix& B, const Matrix& C, const PerturbationCoords& coords);

/// Inverse of synthesize() for the same factors. Blocks whose norm falls below
/// 1e-12 get the first canonical unit vector as their direction.
PerturbationCoords analyze(const KroneckerFactors& factors, const Perturbation& delta);
PerturbationCoords analyze(const Perturbation& delta, const Matrix& B, const Matrix& C);

/// (rho sin(pi tau/2) sin(pi theta/2))^2.
double closed_form_cost(double rho, double tau, double theta);

/// Coordinates with phi_c, phi_s drawn uniformly from their unit spheres.
PerturbationCoords random_coords(const KroneckerFactors& factors, double rho, double tau,
                                 double theta, Stream& stream);

}  // namespace sofup
