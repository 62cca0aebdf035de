#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qbnets/tensor.hpp"

namespace testing {

using qbnets::Complex;
using qbnets::ComplexMatrix;
using qbnets::ComplexVector;

inline const double kLn2 = std::log(2.0);

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline ComplexVector ket(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

inline ComplexVector bell() {
  const double r = 1.0 / std::sqrt(2.0);
  return ket({r, 0, 0, r});
}

// Eigenvalues of a 2x2 Hermitian matrix in closed form.
inline std::pair<double, double> eig2(const ComplexMatrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double off = std::abs(m(0, 1));
  const double mid = (a + d) / 2, rad = std::sqrt((a - d) * (a - d) / 4 + off * off);
  return {mid - rad, mid + rad};
}

inline double xlogx_sum(const std::vector<double>& ps) {
  double s = 0;
  for (double p : ps) {
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s;
}

}  // namespace testing
