#pragma once

#include <vector>

#include "sofup/statespace.hpp"

namespace sofup {

/// Sampled closed-loop response; inputs[k] = F C states[k], outputs[k] = C states[k].
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<Vector> inputs;
  std::vector<Vector> outputs;
};

/// Integrates x' = (A + Delta + B F C) x from x0 with fixed-step classical RK4.
/// The final step is shortened when t_end is not a multiple of dt. Throws
/// StepTooLarge when dt * ||A + Delta + B F C||_2 > 1.
Trajectory simulate(const StateSpaceModel& model, const GainMatrix& gain, const Matrix* delta,
                    const Vector& x0, double t_end, double dt);

/// Per sample 100 ||u_a - u_b|| / ||u_b||; NaN where ||u_b|| <= 1e-12.
std::vector<double> input_relative_error(const Trajectory& a, const Trajectory& b);

}  // namespace sofup
