// SPDX-License-Identifier: Apache-2.0
//
// Compensated (error-free-transformation) accumulation for the long
// alternating sums in the summation oracles and identity checks, plus a
// running record of the largest partial sum so callers can estimate how
// much cancellation the final value absorbed.

#pragma once

#include <algorithm>
#include <cmath>

namespace fgent {

/// Neumaier-compensated accumulator. Tracks the largest intermediate
/// magnitude seen, from which condition_estimate() reports the ratio of
/// peak partial sum to final value — large ratios mean the result came
/// out of heavy cancellation and carries correspondingly fewer digits.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    peak_ = std::max(peak_, std::abs(t));
  }

  double value() const { return sum_ + comp_; }
  double peak_partial() const { return peak_; }

  /// max |partial sum| / |final value|; 1 means no cancellation.
  double condition_estimate() const {
    const double v = std::abs(value());
    if (peak_ == 0.0) return 1.0;
    if (v == 0.0) return peak_ / 1e-300;
    return peak_ / v;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double peak_ = 0.0;
};

}  // namespace fgent
