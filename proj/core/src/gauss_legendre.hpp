#ifndef NBLAB_SRC_GAUSS_LEGENDRE_HPP
#define NBLAB_SRC_GAUSS_LEGENDRE_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace nblab::detail {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(std::size_t order) : nodes(order), weights(order) {
    const std::size_t n = order;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double dk = static_cast<double>(k);
          const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = w;
      weights[n - 1 - i] = w;
    }
  }
};

}  // namespace nblab::detail

#endif  // NBLAB_SRC_GAUSS_LEGENDRE_HPP
