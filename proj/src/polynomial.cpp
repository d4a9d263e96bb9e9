#include "shaping/polynomial.hpp"

#include <algorithm>

namespace shaping::poly {

Coeffs derivative(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  Coeffs d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

Coeffs multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Coeffs strip_trailing_zeros(std::span<const double> c) {
  Coeffs out(c.begin(), c.end());
  while (!out.empty() && out.back() == 0.0) out.pop_back();
  return out;
}

Coeffs from_roots(std::span<const std::complex<double>> roots) {
  std::vector<std::complex<double>> acc{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] -= r * acc[k];
    }
    acc = std::move(next);
  }
  Coeffs out(acc.size());
  std::transform(acc.begin(), acc.end(), out.begin(), [](auto z) { return z.real(); });
  return out;
}

std::vector<std::complex<double>> deflate(std::span<const std::complex<double>> c,
                                          std::complex<double> root) {
  if (c.size() <= 1) return {};
  // Synthetic division from the leading coefficient down.
  std::vector<std::complex<double>> q(c.size() - 1);
  std::complex<double> carry = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    carry = c[k] + carry * root;
    q[k - 1] = carry;
  }
  return q;
}

Coeffs time_constant_factor(double theta, int power) {
  Coeffs out{1.0};
  const Coeffs f{1.0, theta};
  for (int k = 0; k < power; ++k) out = multiply(out, f);
  return out;
}

}  // namespace shaping::poly
