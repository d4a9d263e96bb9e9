#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string_view>

#include "shaping/transfer_function.hpp"

namespace shaping {

enum class Provenance { ClosedForm, RationalInP, Quadrature };

std::string_view to_string(Provenance p) noexcept;

/// Truncated two-dimensional non-stationary transfer function on the cosine basis of [0, T].
struct SpectralOperator {
  Eigen::MatrixXd matrix;
  double horizon = 0.0;
  int order = 0;
  Provenance provenance = Provenance::ClosedForm;
};

/// Derived constants shared by the aperiodic and oscillatory closed forms.
struct BlockParameters {
  double theta = 0.0;
  double xi = 0.0;
  double mu = 0.0;      // -xi/theta; -1/theta for aperiodic blocks
  double nu = 0.0;      // sqrt(1 - xi^2)/theta; 0 for aperiodic blocks
  double lambda = 0.0;  // 1/theta
  double eta_sq = 0.0;  // mu^2 - nu^2, signed

  static BlockParameters aperiodic(double theta);
  static BlockParameters oscillatory(double theta, double xi);

  /// phi_i^{+/-} = mu^2 T^2 +/- i^2 pi^2
  double phi_plus(int i, double horizon) const noexcept;
  double phi_minus(int i, double horizon) const noexcept;
  /// psi_i^{+/-} = lambda^2 T^2 +/- i^2 pi^2
  double psi_plus(int i, double horizon) const noexcept;
  double psi_minus(int i, double horizon) const noexcept;
};

/// P^{-1}, the integrator (kernel 1(eta)).
SpectralOperator integration_matrix(double horizon, int order);
/// P, the differentiator.
SpectralOperator differentiation_matrix(double horizon, int order);
SpectralOperator identity_operator(double horizon, int order);

/// A_theta for 1/(theta s + 1); params from BlockParameters::aperiodic.
SpectralOperator aperiodic_matrix(const BlockParameters& params, double horizon, int order);
/// A_theta^2 for 1/(theta s + 1)^2.
SpectralOperator aperiodic2_matrix(const BlockParameters& params, double horizon, int order);
/// K_{theta,xi} for 1/(theta^2 s^2 + 2 xi theta s + 1).
SpectralOperator oscillatory_matrix(const BlockParameters& params, double horizon, int order);

/// Projection of the complex kernel e^{exponent eta}. Real and imaginary parts give the
/// e^{mu eta} cos(nu eta) and e^{mu eta} sin(nu eta) projections.
Eigen::MatrixXcd exponential_kernel_matrix(std::complex<double> exponent, double horizon, int order);

enum class CompositionMode {
  Polynomial,  // (sum a_k P^k)^{-1} (sum b_k P^k)
  Factored,    // gain * prod (time-constant factor)^{-1} * prod (time-constant factor)
};

std::string_view to_string(CompositionMode mode) noexcept;

/// H(s) evaluated at the truncated P. Accepts any coefficient pair with deg num <= deg den,
/// so constants give the proportional block k E.
SpectralOperator compose_rational(std::span<const double> num, std::span<const double> den,
                                  double horizon, int order,
                                  CompositionMode mode = CompositionMode::Factored);
SpectralOperator compose_rational(const RationalTransferFunction& tf, double horizon, int order,
                                  CompositionMode mode = CompositionMode::Factored);

/// Sum over partial fractions of the matching closed-form block matrices.
SpectralOperator exact_projection(const RationalTransferFunction& tf, double horizon, int order);

/// Inverse of a truncated operator. Condition estimate must stay below 1e12.
SpectralOperator whitening_operator(const SpectralOperator& w);

/// (sum b_k P^k)^{-1} (sum a_k P^k) directly from the coefficients.
SpectralOperator whitening_rational(const RationalTransferFunction& tf, double horizon, int order);

/// Sum of squared entries, accumulated in long double.
double frobenius_squared(const Eigen::MatrixXd& m);
double frobenius_distance_squared(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace shaping
