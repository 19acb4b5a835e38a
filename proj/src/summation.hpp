#pragma once

#include <cmath>
#include <complex>

namespace zetalab::detail {

// Kahan-Babuska (Neumaier) accumulator.
template <class Real>
class Neumaier {
 public:
  void add(Real x) {
    Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

class ComplexNeumaier {
 public:
  void add(double re, double im) {
    re_.add(re);
    im_.add(im);
  }
  void add(std::complex<double> z) { add(z.real(), z.imag()); }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  Neumaier<double> re_, im_;
};

}  // namespace zetalab::detail
