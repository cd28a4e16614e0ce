#ifndef NBLAB_SRC_BERNOULLI_HPP
#define NBLAB_SRC_BERNOULLI_HPP

#include <stdexcept>

namespace nblab::detail {

/// Bernoulli polynomial B_m(x), 1 <= m <= 10.
inline double bernoulli_poly(int m, double x) {
  const double x2 = x * x;
  switch (m) {
    case 1: return x - 0.5;
    case 2: return x2 - x + 1.0 / 6.0;
    case 3: return x * (x2 - 1.5 * x + 0.5);
    case 4: return x2 * (x2 - 2.0 * x + 1.0) - 1.0 / 30.0;
    case 5: return x * (x2 * (x2 - 2.5 * x + 5.0 / 3.0) - 1.0 / 6.0);
    case 6: return x2 * (x2 * (x2 - 3.0 * x + 2.5) - 0.5) + 1.0 / 42.0;
    case 7: return x * (x2 * (x2 * (x2 - 3.5 * x + 3.5) - 7.0 / 6.0) + 1.0 / 6.0);
    case 8:
      return x2 * (x2 * (x2 * (x2 - 4.0 * x + 14.0 / 3.0) - 7.0 / 3.0) + 2.0 / 3.0) - 1.0 / 30.0;
    case 9:
      return x * (x2 * (x2 * (x2 * (x2 - 4.5 * x + 6.0) - 4.2) + 2.0) - 0.3);
    case 10:
      return x2 * (x2 * (x2 * (x2 * (x2 - 5.0 * x + 7.5) - 7.0) + 5.0) - 1.5) + 5.0 / 66.0;
    default: throw std::logic_error("bernoulli_poly: unsupported order");
  }
}

}  // namespace nblab::detail

#endif  // NBLAB_SRC_BERNOULLI_HPP
