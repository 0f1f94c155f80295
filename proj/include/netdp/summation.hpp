#pragma once

#include <cmath>
#include <span>

namespace netdp {

// Compensated (Neumaier) accumulator. Estimator sums and the enumeration
// oracle both need reductions whose error stays near one ulp of the true
// total regardless of term count or magnitude spread.
class NeumaierSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace netdp
