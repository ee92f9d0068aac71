#include "sofup/random.hpp"

#include <cmath>

namespace sofup {

double Stream::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

Vector Stream::unit_vector(Index dim) {
  Vector v(dim);
  if (dim == 0) return v;
  double norm = 0.0;
  do {
    for (Index i = 0; i < dim; ++i) v(i) = normal();
    norm = v.norm();
  } while (norm < 1e-300);
  return v / norm;
}

}  // namespace sofup
