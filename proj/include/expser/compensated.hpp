#pragma once

#include <cmath>
#include <complex>

namespace expser {

/// Neumaier (improved Kahan) accumulator for real scalars.
///
/// Unlike plain Kahan it stays exact when an incoming term is larger in
/// magnitude than the running sum, which is the common case in the
/// alternating polynomial series this library sums.
template <typename Real>
class NeumaierSum {
 public:
  constexpr NeumaierSum() = default;

  void add(Real term) {
    const Real t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  NeumaierSum& operator+=(Real term) {
    add(term);
    return *this;
  }

  [[nodiscard]] Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

/// Componentwise compensation for complex sums.
template <typename Real>
class NeumaierSum<std::complex<Real>> {
 public:
  void add(std::complex<Real> term) {
    re_.add(term.real());
    im_.add(term.imag());
  }

  NeumaierSum& operator+=(std::complex<Real> term) {
    add(term);
    return *this;
  }

  [[nodiscard]] std::complex<Real> value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum<Real> re_;
  NeumaierSum<Real> im_;
};

}  // namespace expser
