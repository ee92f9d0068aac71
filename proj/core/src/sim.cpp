#include "sofup/sim.hpp"

#include <cmath>
#include <limits>

#include "sofup/errors.hpp"

namespace sofup {

Trajectory simulate(const StateSpaceModel& model, const GainMatrix& gain, const Matrix* delta,
                    const Vector& x0, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= dt) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::DomainError, "need dt > 0 and t_end >= dt");
  }
  if (x0.size() != model.n()) {
    throw Error(ErrorCode::DimensionMismatch, "x0 must have length n = " +
                                                  std::to_string(model.n()));
  }
  const Matrix M = closed_loop(model, gain, delta);
  const double norm2 = Eigen::JacobiSVD<Matrix>(M).singularValues()(0);
  if (dt * norm2 > 1.0) {
    throw Error(ErrorCode::StepTooLarge, "dt * ||closed loop||_2 = " +
                                             std::to_string(dt * norm2) + " exceeds 1");
  }
  const Matrix FC = gain.F * model.C();

  const auto full_steps = static_cast<long>(std::floor(t_end / dt * (1.0 + 1e-12)));
  const double remainder = t_end - static_cast<double>(full_steps) * dt;
  const bool tail_step = remainder > 1e-12 * t_end;
  const size_t samples = static_cast<size_t>(full_steps) + (tail_step ? 2 : 1);

  Trajectory traj;
  traj.times.reserve(samples);
  traj.states.reserve(samples);
  traj.inputs.reserve(samples);
  traj.outputs.reserve(samples);

  auto record = [&](double t, const Vector& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.inputs.push_back(FC * x);
    traj.outputs.push_back(model.C() * x);
  };
  auto rk4 = [&M](const Vector& x, double h) {
    const Vector k1 = M * x;
    const Vector k2 = M * (x + 0.5 * h * k1);
    const Vector k3 = M * (x + 0.5 * h * k2);
    const Vector k4 = M * (x + h * k3);
    return Vector(x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };

  Vector x = x0;
  record(0.0, x);
  for (long k = 1; k <= full_steps; ++k) {
    x = rk4(x, dt);
    record(static_cast<double>(k) * dt, x);
  }
  if (tail_step) {
    x = rk4(x, remainder);
    record(t_end, x);
  }
  return traj;
}

std::vector<double> input_relative_error(const Trajectory& a, const Trajectory& b) {
  if (a.times.size() != b.times.size() || a.inputs.size() != b.inputs.size()) {
    throw Error(ErrorCode::GridMismatch, "trajectories have different lengths");
  }
  for (size_t k = 0; k < a.times.size(); ++k) {
    if (std::abs(a.times[k] - b.times[k]) > 1e-12 * std::max(1.0, std::abs(b.times[k]))) {
      throw Error(ErrorCode::GridMismatch, "time grids differ at sample " + std::to_string(k));
    }
  }
  std::vector<double> out(a.inputs.size());
  for (size_t k = 0; k < out.size(); ++k) {
    if (a.inputs[k].size() != b.inputs[k].size()) {
      throw Error(ErrorCode::GridMismatch, "input dimensions differ");
    }
    const double ref = b.inputs[k].norm();
    out[k] = ref <= 1e-12 ? std::numeric_limits<double>::quiet_NaN()
                          : 100.0 * (a.inputs[k] - b.inputs[k]).norm() / ref;
  }
  return out;
}

}  // namespace sofup
