#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sofup::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;  // rank, stability and other input-contract failures
inline constexpr int kExitNumerical = 3;   // eigen/quadrature/bisection failures
inline constexpr int kExitUsage = 64;
inline constexpr int kExitNoInput = 66;

/// Runs one sofup invocation. args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sofup::cli
