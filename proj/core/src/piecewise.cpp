#include "nblab/piecewise.hpp"

namespace nblab {

double integrate_quadratic_ratio(double c0, double c1, double c2, double u0, double h) {
  if (h <= 0.0) return 0.0;
  if (8.0 * h > u0) {
    // Substitute y = u0 + w and integrate d2 + d1/y + d0/y^2 exactly.
    const double d2 = c2;
    const double d1 = c1 - 2.0 * c2 * u0;
    const double d0 = c0 - c1 * u0 + c2 * u0 * u0;
    return d2 * h + d1 * std::log1p(h / u0) + d0 * h / (u0 * (u0 + h));
  }
  // (u0 + w)^-2 = u0^-2 sum_j (j+1) (-w/u0)^j, integrated termwise.
  const double q = h / u0;
  const double h2 = h * h;
  double sum = 0.0;
  double qj = 1.0;  // (-q)^j
  for (int j = 0; j < 64; ++j) {
    const double dj = static_cast<double>(j);
    const double term =
        qj * (c0 + (dj + 1.0) * (c1 * h / (dj + 2.0) + c2 * h2 / (dj + 3.0)));
    sum += term;
    if (j >= 2 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    qj *= -q;
  }
  return sum * h / (u0 * u0);
}

}  // namespace nblab
