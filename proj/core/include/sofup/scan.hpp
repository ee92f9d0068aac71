#pragma once

#include <cstdint>
#include <vector>

#include "sofup/statespace.hpp"

namespace sofup {

struct GridSpec {
  int n_tau = 41;
  int n_theta = 41;
};

struct ScanCell {
  double tau = 0.0;
  double theta = 0.0;
  double J_closed = 0.0;    // closed-form residual from (rho, tau, theta)
  double J_residual = 0.0;  // ||B G* C + Delta||_F^2 of the synthesized Delta
  double alpha_closed = 0.0;
  bool guaranteed = false;
  bool exact_stable = false;
};

/// Cells are stored tau-major: cells[i * thetas.size() + j] is (taus[i], thetas[j]).
struct ScanGrid {
  std::vector<double> taus;
  std::vector<double> thetas;
  std::uint64_t seed = 0;
  double rho = 0.0;
  double beta = 0.0;
  std::vector<ScanCell> cells;
};

/// Cell-centred samples (k + 1/2) / count, k = 0..count-1.
std::vector<double> cell_centres(int count);

/// For every grid cell: draw (phi_c, phi_s) from the stream keyed by
/// (seed, i, j), synthesize Delta, apply the closed-form update and record the
/// guaranteed and exact stability verdicts.
ScanGrid scan(const StateSpaceModel& model, const GainMatrix& F_nominal, double rho, double beta,
              const GridSpec& grid, std::uint64_t seed, std::size_t threads = 0);

struct RegionFraction {
  double guaranteed_frac = 0.0;
  double exact_frac = 0.0;
  std::size_t violations = 0;  // guaranteed but not exactly stable
};

RegionFraction region_fraction(const ScanGrid& grid);

}  // namespace sofup
