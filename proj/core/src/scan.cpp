#include "sofup/scan.hpp"

#include "sofup/errors.hpp"
#include "sofup/kron.hpp"
#include "sofup/parallel.hpp"
#include "sofup/perturb.hpp"
#include "sofup/random.hpp"
#include "sofup/region.hpp"
#include "sofup/update.hpp"

namespace sofup {

std::vector<double> cell_centres(int count) {
  if (count <= 0) throw Error(ErrorCode::EmptyGrid, "grid needs at least one cell per axis");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back((k + 0.5) / count);
  return out;
}

ScanGrid scan(const StateSpaceModel& model, const GainMatrix& F_nominal, double rho, double beta,
              const GridSpec& grid, std::uint64_t seed, std::size_t threads) {
  if (grid.n_tau <= 0 || grid.n_theta <= 0) {
    throw Error(ErrorCode::EmptyGrid, "grid dimensions must be positive");
  }
  validate(model);
  if (!is_hurwitz(closed_loop(model, F_nominal))) {
    throw Error(ErrorCode::NotStable, "nominal closed loop A + B F C is not Hurwitz");
  }

  const KroneckerFactors factors(model.B(), model.C());
  const GainUpdater updater(model.B(), model.C());
  const StabilityRegion region(beta, rho);

  ScanGrid out;
  out.taus = cell_centres(grid.n_tau);
  out.thetas = cell_centres(grid.n_theta);
  out.seed = seed;
  out.rho = rho;
  out.beta = beta;
  out.cells.resize(out.taus.size() * out.thetas.size());

  const size_t n_theta = out.thetas.size();
  parallel_for(out.cells.size(), threads, [&](std::size_t index) {
    const size_t i = index / n_theta;
    const size_t j = index % n_theta;
    ScanCell& cell = out.cells[index];
    cell.tau = out.taus[i];
    cell.theta = out.thetas[j];

    Stream stream(seed, i, j);
    const PerturbationCoords coords = random_coords(factors, rho, cell.tau, cell.theta, stream);
    const Perturbation delta = synthesize(factors, coords);
    const Matrix G = updater.optimal_update(delta.delta());
    const GainMatrix updated{F_nominal.F + G, GainProvenance::updated};

    cell.J_closed = closed_form_cost(rho, cell.tau, cell.theta);
    cell.J_residual = update_cost(model.B(), model.C(), G, delta.delta());
    cell.alpha_closed = spectral_abscissa(closed_loop(model, updated, delta));
    cell.guaranteed = region.contains(cell.tau, cell.theta);
    cell.exact_stable = cell.alpha_closed < 0.0;
  });
  return out;
}

RegionFraction region_fraction(const ScanGrid& grid) {
  if (grid.cells.empty()) {
    throw Error(ErrorCode::EmptyGrid, "scan grid has no cells");
  }
  RegionFraction f;
  std::size_t guaranteed = 0;
  std::size_t stable = 0;
  for (const ScanCell& cell : grid.cells) {
    guaranteed += cell.guaranteed ? 1 : 0;
    stable += cell.exact_stable ? 1 : 0;
    f.violations += (cell.guaranteed && !cell.exact_stable) ? 1 : 0;
  }
  const auto total = static_cast<double>(grid.cells.size());
  f.guaranteed_frac = static_cast<double>(guaranteed) / total;
  f.exact_frac = static_cast<double>(stable) / total;
  return f;
}

}  // namespace sofup
