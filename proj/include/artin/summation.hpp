#pragma once

#include <cmath>
#include <complex>

namespace artin {

// Neumaier-compensated accumulator. The running error term is folded in only
// on read, so the add path stays branch-light.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
    return *this;
  }

  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }

  void add(double re, double im) {
    re_.add(re);
    im_.add(im);
  }

  ComplexCompensatedSum& operator+=(std::complex<double> z) {
    add(z);
    return *this;
  }

  ComplexCompensatedSum& operator+=(const ComplexCompensatedSum& other) {
    re_ += other.re_;
    im_ += other.im_;
    return *this;
  }

  [[nodiscard]] std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace artin
