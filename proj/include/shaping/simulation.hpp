#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "shaping/cosine_basis.hpp"
#include "shaping/random.hpp"
#include "shaping/spectral_operators.hpp"
#include "shaping/trajectory.hpp"

namespace shaping {

/// L independent standard normals: the truncated spectral characteristic of white noise.
Eigen::VectorXd sample_noise_spectrum(GaussianSource& source, int order);

/// X = W V, then x(t) = sum_i X_i q(i, t) on `grid_size` uniform points of [0, T].
SampleTrajectory spectral_simulate(const SpectralOperator& w, GaussianSource& source, std::size_t grid_size);

/// x(t) for arbitrary times from spectral coefficients; the representation is continuous in t.
std::vector<double> spectral_evaluate(std::span<const double> coefficients, double horizon,
                                      std::span<const double> times);

/// Variance of the truncated spectral process at t: ||W^T q(t)||^2.
double spectral_variance(const SpectralOperator& w, double t);

struct EnsembleStats {
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> variance;         // unbiased
  std::vector<double> stderr_mean;      // sqrt(var / N)
  std::vector<double> stderr_variance;  // sqrt((m4 - var^2) / N)
  std::size_t count = 0;
};

/// Streaming per-time moments (Welford up to the fourth central moment).
class RunningMoments {
 public:
  explicit RunningMoments(std::vector<double> grid);

  /// `values` must match the grid length.
  void add(std::span<const double> values);
  std::size_t count() const noexcept { return count_; }
  EnsembleStats stats() const;

 private:
  std::vector<double> grid_;
  std::vector<double> mean_, m2_, m3_, m4_;
  std::size_t count_ = 0;
};

/// Needs at least two trajectories on one common grid.
EnsembleStats ensemble_stats(std::span<const SampleTrajectory> trajectories);

}  // namespace shaping
