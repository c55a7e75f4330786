#include "specbench/rng.hpp"

#include <cmath>

namespace specbench {

double CounterRng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u clamped away from 0 so the log is finite.
  double u = next_double();
  if (u < 1e-300) u = 1e-300;
  const double v = next_double();
  const double r = std::sqrt(-2.0 * std::log(u));
  spare_ = r * std::sin(2.0 * kPi * v);
  have_spare_ = true;
  return r * std::cos(2.0 * kPi * v);
}

int CounterRng::next_below(int n) {
  require(n > 0, ErrorKind::BadInput, "next_below needs n > 0");
  return static_cast<int>(next_double() * n) % n;
}

std::vector<cplx> random_unit_vector(CounterRng& rng, int dim) {
  std::vector<cplx> v(dim);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) {
      v[i] = rng.next_complex_gaussian();
      norm2 += std::norm(v[i]);
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& x : v) x *= inv;
  return v;
}

}  // namespace specbench
