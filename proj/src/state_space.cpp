#include "shaping/state_space.hpp"

#include <cmath>
#include <sstream>

#include "shaping/error.hpp"
#include "shaping/log.hpp"

namespace shaping {

namespace {

bool is_on_pole(const RationalTransferFunction& tf, std::complex<double> s) {
  const auto d = poly::evaluate<std::complex<double>>(tf.den(), s);
  return std::abs(d) <= 1e-8 * tf.den_scale();
}

}  // namespace

StateSpaceRealization companion_skeleton(const RationalTransferFunction& tf) {
  const int n = tf.order();
  const auto& a = tf.den();
  StateSpaceRealization r;
  r.A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) r.A(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) r.A(n - 1, j) = -a[j] / a[n];
  r.B = Eigen::VectorXd::Zero(n);
  r.C = Eigen::RowVectorXd::Zero(n);
  r.C(0) = 1.0;
  return r;
}

StateSpaceRealization companion_realization(const RationalTransferFunction& tf) {
  auto r = companion_skeleton(tf);
  const int n = tf.order();
  const int m = tf.numerator_degree();
  const auto& a = tf.den();
  const auto& b = tf.num();

  // 1-based B_i as written in the recursion; stored at B(i - 1).
  auto B = [&](int i) -> double& { return r.B(i - 1); };
  B(n - m) = b[m] / a[n];
  for (int i = n - m + 1; i <= n; ++i) {
    double acc = b[n - i];
    for (int j = n - m; j <= i - 1; ++j) acc -= a[n - i + j] * B(j);
    B(i) = acc / a[n];
  }
  return r;
}

std::vector<double> default_interpolation_points(const RationalTransferFunction& tf) {
  const int n = tf.order();
  std::vector<double> pts;
  for (int k = 0; k < n; ++k) {
    double s = k;
    auto taken = [&](double v) {
      for (double p : pts)
        if (p == v) return true;
      return false;
    };
    while (is_on_pole(tf, s) || taken(s)) s += 0.5;
    pts.push_back(s);
  }
  return pts;
}

StateSpaceRealization interpolation_realization(const RationalTransferFunction& tf,
                                                std::span<const double> sample_points) {
  const int n = tf.order();
  if (static_cast<int>(sample_points.size()) != n)
    throw Error(ErrorKind::InvalidArgument, "need exactly n = " + std::to_string(n) + " sample points");
  for (std::size_t k = 0; k < sample_points.size(); ++k) {
    for (std::size_t l = 0; l < k; ++l)
      if (std::abs(sample_points[k] - sample_points[l]) <= 1e-12 * (1.0 + std::abs(sample_points[k])))
        throw Error(ErrorKind::SingularVandermondeLike, "duplicate sample points");
    if (is_on_pole(tf, sample_points[k]))
      throw Error(ErrorKind::SamplePointOnPole, "D(s) vanishes at s = " + std::to_string(sample_points[k]));
  }

  // Extended precision: V is Vandermonde-like and loses digits quickly with n.
  using Real = long double;
  using MatrixR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using VectorR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const auto& a = tf.den();
  const auto& b = tf.num();
  MatrixR V(n, n);
  VectorR M(n);
  for (int k = 0; k < n; ++k) {
    const Real s = sample_points[k];
    for (int j = 1; j <= n; ++j) {
      Real acc = 0.0;  // sum_{l=j}^{n} a_l s^{l-j}, Horner from the top
      for (int l = n; l >= j; --l) acc = acc * s + a[l];
      V(k, j - 1) = acc;
    }
    Real m = 0.0;
    for (auto it = b.rbegin(); it != b.rend(); ++it) m = m * s + *it;
    M(k) = m;
  }

  Eigen::PartialPivLU<MatrixR> lu(V);
  const double rcond = static_cast<double>(lu.rcond());
  if (!(rcond > 1e-18)) throw Error(ErrorKind::SingularVandermondeLike, "V is numerically singular");
  if (1.0 / rcond > kConditionWarnThreshold) {
    std::ostringstream msg;
    msg << "interpolation matrix condition estimate " << 1.0 / rcond;
    warn(msg.str());
  }

  auto r = companion_skeleton(tf);
  r.B = lu.solve(M).cast<double>();
  return r;
}

StateSpaceRealization interpolation_realization(const RationalTransferFunction& tf) {
  const auto pts = default_interpolation_points(tf);
  return interpolation_realization(tf, pts);
}

double transfer_residual(const StateSpaceRealization& realization, const RationalTransferFunction& tf,
                         std::complex<double> s) {
  if (is_on_pole(tf, s)) throw Error(ErrorKind::SamplePointOnPole, "s is a pole of H");
  Eigen::MatrixXcd resolvent = -realization.A.cast<std::complex<double>>();
  resolvent.diagonal().array() += s;
  const Eigen::VectorXcd x = resolvent.partialPivLu().solve(realization.B.cast<std::complex<double>>());
  const std::complex<double> value = realization.C.cast<std::complex<double>>() * x;
  return std::abs(value - tf.evaluate(s));
}

SampleTrajectory euler_maruyama(const StateSpaceRealization& realization, double horizon,
                                std::size_t steps, GaussianSource& noise) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
  if (!(horizon > 0.0)) throw Error(ErrorKind::InvalidArgument, "horizon must be positive");

  SampleTrajectory out;
  out.method = SimulationMethod::EulerMaruyama;
  out.seed = noise.seed();
  out.stream_id = noise.stream_id();
  out.grid = uniform_grid(horizon, steps + 1);
  out.values.resize(steps + 1);

  const double h = horizon / static_cast<double>(steps);
  const double sqrt_h = std::sqrt(h);
  // x_{k+1} = (E + hA) x_k + sqrt(h) B xi_k
  const Eigen::MatrixXd transition =
      Eigen::MatrixXd::Identity(realization.order(), realization.order()) + h * realization.A;
  const Eigen::VectorXd kick = sqrt_h * realization.B;

  Eigen::VectorXd state = Eigen::VectorXd::Zero(realization.order());
  out.values[0] = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    state = transition * state + kick * noise.next();
    out.values[k + 1] = realization.C.dot(state);
  }
  return out;
}

}  // namespace shaping
