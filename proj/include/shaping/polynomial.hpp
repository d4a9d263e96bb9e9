#pragma once

// Dense real polynomials stored in ascending powers: c[0] + c[1] s + ... + c[n] s^n.

#include <complex>
#include <span>
#include <vector>

namespace shaping::poly {

using Coeffs = std::vector<double>;

template <typename T>
T evaluate(std::span<const double> c, T s) {
  T acc{0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + T{*it};
  return acc;
}

Coeffs derivative(std::span<const double> c);
Coeffs multiply(std::span<const double> a, std::span<const double> b);
Coeffs strip_trailing_zeros(std::span<const double> c);

/// Monic product of (s - r) over `roots`; complex roots must come in conjugate pairs.
Coeffs from_roots(std::span<const std::complex<double>> roots);

/// Divides by (s - root), discarding the remainder.
std::vector<std::complex<double>> deflate(std::span<const std::complex<double>> c,
                                          std::complex<double> root);

/// Ascending coefficients of (theta s + 1)^power.
Coeffs time_constant_factor(double theta, int power);

}  // namespace shaping::poly
