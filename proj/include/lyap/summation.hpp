#ifndef LYAP_SUMMATION_HPP
#define LYAP_SUMMATION_HPP

#include <cmath>

#include "lyap/real.hpp"

namespace lyap {

/// Compensated (Kahan-Babuska-Neumaier) accumulator.
class KahanSum {
 public:
  void add(Real x) noexcept {
    const Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  KahanSum& operator+=(Real x) noexcept {
    add(x);
    return *this;
  }

  /// Folds another partial sum in; merge order matters for bit-exactness.
  void merge(const KahanSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  Real value() const noexcept { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

} // namespace lyap

#endif
