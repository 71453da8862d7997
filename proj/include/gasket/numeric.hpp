#pragma once

#include <cmath>
#include <span>

namespace gasket {

/// log 3 / log 2, the similarity dimension of the gasket.
inline const double kGasketDim = std::log(3.0) / std::log(2.0);

/// Neumaier-compensated accumulator. Summation order is the caller's, so
/// results are reproducible for a fixed traversal order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Slope of the unweighted least-squares line through (xs[i], ys[i]).
/// Requires at least two points with distinct abscissae.
double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace gasket
