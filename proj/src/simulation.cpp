#include "shaping/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "shaping/error.hpp"

namespace shaping {

Eigen::VectorXd sample_noise_spectrum(GaussianSource& source, int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "truncation order must be >= 1");
  Eigen::VectorXd v(order);
  source.fill(std::span<double>(v.data(), static_cast<std::size_t>(order)));
  return v;
}

std::vector<double> spectral_evaluate(std::span<const double> coefficients, double horizon,
                                      std::span<const double> times) {
  const CosineBasis basis(horizon);
  return synthesize_function(basis, coefficients, times);
}

SampleTrajectory spectral_simulate(const SpectralOperator& w, GaussianSource& source, std::size_t grid_size) {
  if (grid_size < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  SampleTrajectory out;
  out.method = SimulationMethod::Spectral;
  out.seed = source.seed();
  out.stream_id = source.stream_id();

  const Eigen::VectorXd noise = sample_noise_spectrum(source, w.order);
  const Eigen::VectorXd x = w.matrix * noise;
  out.coefficients.assign(x.data(), x.data() + x.size());
  out.grid = uniform_grid(w.horizon, grid_size);
  out.values = spectral_evaluate(out.coefficients, w.horizon, out.grid);
  return out;
}

double spectral_variance(const SpectralOperator& w, double t) {
  const CosineBasis basis(w.horizon);
  const Eigen::VectorXd q = basis.values(w.order, t);
  return (w.matrix.transpose() * q).squaredNorm();
}

RunningMoments::RunningMoments(std::vector<double> grid)
    : grid_(std::move(grid)),
      mean_(grid_.size(), 0.0),
      m2_(grid_.size(), 0.0),
      m3_(grid_.size(), 0.0),
      m4_(grid_.size(), 0.0) {}

void RunningMoments::add(std::span<const double> values) {
  if (values.size() != grid_.size()) throw Error(ErrorKind::GridMismatch, "trajectory length differs from grid");
  const double n1 = static_cast<double>(count_);
  const double n = n1 + 1.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double delta = values[k] - mean_[k];
    const double dn = delta / n;
    const double dn2 = dn * dn;
    const double term = delta * dn * n1;
    mean_[k] += dn;
    m4_[k] += term * dn2 * (n * n - 3.0 * n + 3.0) + 6.0 * dn2 * m2_[k] - 4.0 * dn * m3_[k];
    m3_[k] += term * dn * (n - 2.0) - 3.0 * dn * m2_[k];
    m2_[k] += term;
  }
  ++count_;
}

EnsembleStats RunningMoments::stats() const {
  if (count_ < 2) throw Error(ErrorKind::InvalidArgument, "ensemble statistics need at least 2 trajectories");
  EnsembleStats s;
  s.grid = grid_;
  s.count = count_;
  const double n = static_cast<double>(count_);
  const std::size_t size = grid_.size();
  s.mean = mean_;
  s.variance.resize(size);
  s.stderr_mean.resize(size);
  s.stderr_variance.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double var = m2_[k] / (n - 1.0);
    const double central4 = m4_[k] / n;
    const double biased = m2_[k] / n;
    s.variance[k] = var;
    s.stderr_mean[k] = std::sqrt(var / n);
    s.stderr_variance[k] = std::sqrt(std::max(0.0, central4 - biased * biased) / n);
  }
  return s;
}

EnsembleStats ensemble_stats(std::span<const SampleTrajectory> trajectories) {
  if (trajectories.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "ensemble statistics need at least 2 trajectories");
  RunningMoments moments(trajectories.front().grid);
  for (const auto& tr : trajectories) {
    if (tr.grid != trajectories.front().grid) throw Error(ErrorKind::GridMismatch, "trajectory grids differ");
    moments.add(tr.values);
  }
  return moments.stats();
}

}  // namespace shaping
