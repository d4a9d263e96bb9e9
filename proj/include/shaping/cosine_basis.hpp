#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "shaping/impulse_response.hpp"

namespace shaping {

/// Orthonormal cosine basis of L2([0, T]):
/// q(0, t) = sqrt(1/T), q(i, t) = sqrt(2/T) cos(i pi t / T).
class CosineBasis {
 public:
  explicit CosineBasis(double horizon);

  double horizon() const noexcept { return horizon_; }

  /// Unchecked value; valid for any t.
  double value(int index, double t) const noexcept;
  /// q(0, t), ..., q(count - 1, t).
  Eigen::VectorXd values(int count, double t) const;

 private:
  double horizon_;
};

/// Checked q(i, t): i >= 0 and 0 <= t <= T.
double basis_eval(const CosineBasis& basis, int index, double t);

using Kernel = std::function<double(double)>;

/// W_ij = int int_{tau <= t} k(t - tau) q(i, t) q(j, tau) dt dtau by panel Gauss-Legendre over
/// the causal triangle, doubling the panel count until no element moves by more than 1e-10.
Eigen::MatrixXd project_kernel(const CosineBasis& basis, const Kernel& kernel, int order);
Eigen::MatrixXd project_kernel(const CosineBasis& basis, const ModalImpulseResponse& kernel, int order);

/// c_i = int_0^T f(t) q(i, t) dt, same panel rule.
Eigen::VectorXd project_function(const CosineBasis& basis, const Kernel& f, int order);

/// sum_{i < L} c_i q(i, t) at each grid time.
std::vector<double> synthesize_function(const CosineBasis& basis, std::span<const double> coefficients,
                                        std::span<const double> grid);

inline constexpr double kProjectionTolerance = 1e-10;

}  // namespace shaping
