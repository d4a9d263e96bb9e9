#pragma once

#include <complex>
#include <span>
#include <vector>

#include "shaping/polynomial.hpp"

namespace shaping {

/// H(s) = M(s) / D(s) with real coefficients in ascending powers.
///
/// Construction validates: both sequences non-empty, trailing zeros stripped,
/// nonzero leading coefficients, and strict properness (deg D > deg M).
class RationalTransferFunction {
 public:
  RationalTransferFunction(std::span<const double> num, std::span<const double> den);

  const poly::Coeffs& num() const noexcept { return num_; }
  const poly::Coeffs& den() const noexcept { return den_; }

  /// n, the denominator degree.
  int order() const noexcept { return static_cast<int>(den_.size()) - 1; }
  /// m, the numerator degree.
  int numerator_degree() const noexcept { return static_cast<int>(num_.size()) - 1; }

  std::complex<double> evaluate(std::complex<double> s) const;

  /// max |a_i|, used to scale "is D(s) zero" tests.
  double den_scale() const noexcept;

 private:
  poly::Coeffs num_;
  poly::Coeffs den_;
};

RationalTransferFunction validate(std::span<const double> num, std::span<const double> den);

struct Pole {
  std::complex<double> value;
  int multiplicity = 1;
};

struct PoleZeroForm {
  double gain = 0.0;  // b_m / a_n
  std::vector<std::complex<double>> zeros;
  std::vector<Pole> poles;
  bool stable = true;  // all Re(pole) < 0

  /// gain * prod(s - zero), ascending.
  poly::Coeffs expand_numerator() const;
  /// prod(s - pole)^multiplicity, ascending and monic.
  poly::Coeffs expand_denominator() const;
};

/// Relative tolerance for root clustering. Roots closer than twice this are merged, and
/// imaginary parts below it are dropped, so a split double root always merges.
inline constexpr double kRootClusterTolerance = 1e-5;

/// Roots of a real polynomial from the eigenvalues of its monic companion matrix,
/// merged into clusters (value, multiplicity) and made exactly conjugate-symmetric.
std::vector<Pole> polynomial_roots(std::span<const double> coeffs);

PoleZeroForm find_poles_zeros(const RationalTransferFunction& tf);

/// coefficient / (theta s + 1)^multiplicity, theta = -1 / pole.
struct RealFraction {
  double pole = 0.0;
  int multiplicity = 1;
  double coefficient = 0.0;

  double time_constant() const noexcept { return -1.0 / pole; }
};

/// (coefficient + s_coefficient s) / (theta^2 s^2 + 2 xi theta s + 1) for a conjugate pair
/// with |pole| = 1/theta and Re(pole) = -xi/theta.
struct OscillatoryFraction {
  double theta = 0.0;
  double xi = 0.0;
  double coefficient = 0.0;
  double s_coefficient = 0.0;
};

struct PartialFractions {
  std::vector<RealFraction> real_terms;
  std::vector<OscillatoryFraction> pair_terms;

  std::complex<double> evaluate(std::complex<double> s) const;
};

/// Supports real simple poles, real double poles and simple conjugate pairs, none at s = 0.
PartialFractions partial_fractions(const RationalTransferFunction& tf);

/// |H(i omega)|^2.
double psd(const RationalTransferFunction& tf, double omega);

}  // namespace shaping
