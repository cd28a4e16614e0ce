#ifndef NBLAB_ERRORS_HPP
#define NBLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nblab {

// Argument validation uses the standard hierarchy directly:
//   std::invalid_argument  malformed parameters
//   std::out_of_range      index beyond a table
//   std::domain_error      evaluation at a pole
// The types below cover the remaining failure modes.

/// Evaluation requested outside the range the numerics are calibrated for.
class UnsupportedRange : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// A tolerance could not be met within the configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cholesky factorization of a Gram system failed. Carries enough
/// information for the caller to retry with a ridge.
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, double condition_estimate,
                     double suggested_ridge)
      : std::runtime_error(what),
        condition_estimate_(condition_estimate),
        suggested_ridge_(suggested_ridge) {}

  double condition_estimate() const noexcept { return condition_estimate_; }
  double suggested_ridge() const noexcept { return suggested_ridge_; }

 private:
  double condition_estimate_;
  double suggested_ridge_;
};

}  // namespace nblab

#endif  // NBLAB_ERRORS_HPP
