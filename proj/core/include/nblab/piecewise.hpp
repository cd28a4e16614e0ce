#ifndef NBLAB_PIECEWISE_HPP
#define NBLAB_PIECEWISE_HPP

#include <cmath>

namespace nblab {

/// Neumaier-compensated running sum. Reductions in this library fold
/// partial results in a fixed order so outputs do not depend on threading.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Integral over [0, h] of (c0 + c1 w + c2 w^2) / (u0 + w)^2, u0 > 0.
///
/// Direct antiderivatives cancel catastrophically once u0 >> h (every
/// piece of a long tiling contributes O(1) terms that sum to O(u0^-2)), so
/// for h <= u0/8 the integrand is expanded in powers of w/u0 instead.
double integrate_quadratic_ratio(double c0, double c1, double c2, double u0, double h);

}  // namespace nblab

#endif  // NBLAB_PIECEWISE_HPP
