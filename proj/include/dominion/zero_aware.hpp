#pragma once

#include <stdexcept>

#include "dominion/number.hpp"

namespace dominion {

/// A product whose zero factors are counted instead of absorbed, so that
/// dividing by a factor previously multiplied in is always exact, zero
/// included. value() is the nonzero part while no zero factor is pending.
template <class T>
class ZeroAwareProduct {
 public:
  ZeroAwareProduct() : nonzero_(1) {}
  explicit ZeroAwareProduct(const T& v) : nonzero_(1) { *this *= v; }

  ZeroAwareProduct& operator*=(const T& x) {
    if (ScalarTraits<T>::is_zero(x)) {
      ++zeros_;
    } else {
      nonzero_ *= x;
    }
    return *this;
  }

  ZeroAwareProduct& operator/=(const T& x) {
    if (ScalarTraits<T>::is_zero(x)) {
      if (zeros_ == 0) throw std::domain_error("division by zero with no pending zero factor");
      --zeros_;
    } else {
      nonzero_ /= x;
    }
    return *this;
  }

  ZeroAwareProduct& operator*=(const ZeroAwareProduct& other) {
    nonzero_ *= other.nonzero_;
    zeros_ += other.zeros_;
    return *this;
  }

  ZeroAwareProduct& operator/=(const ZeroAwareProduct& other) {
    if (other.zeros_ > zeros_) throw std::domain_error("zero multiplicity would become negative");
    nonzero_ /= other.nonzero_;
    zeros_ -= other.zeros_;
    return *this;
  }

  friend ZeroAwareProduct operator*(ZeroAwareProduct a, const ZeroAwareProduct& b) { return a *= b; }
  friend ZeroAwareProduct operator/(ZeroAwareProduct a, const ZeroAwareProduct& b) { return a /= b; }

  T value() const { return zeros_ == 0 ? nonzero_ : T(0); }
  const T& nonzero_part() const { return nonzero_; }
  int zero_count() const { return zeros_; }
  bool is_zero() const { return zeros_ > 0; }

  friend bool operator==(const ZeroAwareProduct& a, const ZeroAwareProduct& b) {
    return a.zeros_ == b.zeros_ && a.nonzero_ == b.nonzero_;
  }

 private:
  T nonzero_;
  int zeros_ = 0;
};

}  // namespace dominion
