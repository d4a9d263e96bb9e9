#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "shaping/random.hpp"
#include "shaping/trajectory.hpp"
#include "shaping/transfer_function.hpp"

namespace shaping {

/// x' = A x + B g,  x_out = C x  with A in companion form and C = [1 0 ... 0].
struct StateSpaceRealization {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;

  int order() const noexcept { return static_cast<int>(A.rows()); }
};

/// Companion A and C for the denominator of `tf`, B left zero.
StateSpaceRealization companion_skeleton(const RationalTransferFunction& tf);

/// B from the forward recursion on the coefficients.
StateSpaceRealization companion_realization(const RationalTransferFunction& tf);

/// B = V^{-1} M(s_k), V_kj = sum_{l >= j} a_l s_k^{l-j}, at n distinct real points.
StateSpaceRealization interpolation_realization(const RationalTransferFunction& tf,
                                                std::span<const double> sample_points);

/// 0, 1, ..., n-1, each nudged by +0.5 until it is neither a root of D nor a repeat.
std::vector<double> default_interpolation_points(const RationalTransferFunction& tf);

StateSpaceRealization interpolation_realization(const RationalTransferFunction& tf);

/// |C (sE - A)^{-1} B - H(s)|.
double transfer_residual(const StateSpaceRealization& realization, const RationalTransferFunction& tf,
                         std::complex<double> s);

/// Euler-Maruyama from the zero state on a uniform grid of `steps` intervals over [0, horizon].
/// Consumes `steps` variates from `noise`.
SampleTrajectory euler_maruyama(const StateSpaceRealization& realization, double horizon,
                                std::size_t steps, GaussianSource& noise);

}  // namespace shaping
