#include "shaping/cosine_basis.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "shaping/error.hpp"
#include "shaping/quadrature.hpp"

namespace shaping {

const GaussLegendre32& GaussLegendre32::instance() {
  static const GaussLegendre32 rule = [] {
    using Rule = boost::math::quadrature::gauss<double, kPoints>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    GaussLegendre32 r;
    constexpr int half = kPoints / 2;
    for (int k = 0; k < half; ++k) {
      r.nodes[half - 1 - k] = -x[k];
      r.weights[half - 1 - k] = w[k];
      r.nodes[half + k] = x[k];
      r.weights[half + k] = w[k];
    }
    return r;
  }();
  return rule;
}

namespace {

bool time_in_range(double t, double horizon) {
  const double slack = 1e-12 * horizon;
  return t >= -slack && t <= horizon + slack;
}

struct Panel {
  double start;
  double width;
};

/// One pass of the triangle rule with `panels` equal panels.
Eigen::MatrixXd triangle_pass(const CosineBasis& basis, const Kernel& kernel, int order, int panels) {
  const auto& rule = GaussLegendre32::instance();
  constexpr int G = GaussLegendre32::kPoints;
  const double T = basis.horizon();
  const double width = T / panels;

  // Basis values and weights at the tensor nodes of each panel.
  std::vector<Eigen::MatrixXd> q(panels);  // order x G, column a = q(., t_a) * w_a
  std::vector<std::array<double, G>> nodes(panels);
  for (int p = 0; p < panels; ++p) {
    q[p].resize(order, G);
    for (int a = 0; a < G; ++a) {
      const double t = p * width + 0.5 * width * (rule.nodes[a] + 1.0);
      nodes[p][a] = t;
      q[p].col(a) = basis.values(order, t) * (0.5 * width * rule.weights[a]);
    }
  }

  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(order, order);
  Eigen::MatrixXd block(G, G);

  // Panels strictly below the diagonal: tau-panel r < t-panel p.
  for (int p = 0; p < panels; ++p) {
    for (int r = 0; r < p; ++r) {
      for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b) block(a, b) = kernel(nodes[p][a] - nodes[r][b]);
      W.noalias() += q[p] * block * q[r].transpose();
    }
  }

  // Diagonal triangles: for each outer node t_a, integrate tau over [panel start, t_a].
  Eigen::MatrixXd inner(order, G);
  for (int p = 0; p < panels; ++p) {
    const double start = p * width;
    for (int a = 0; a < G; ++a) {
      const double t = nodes[p][a];
      const double half = 0.5 * (t - start);
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(order);
      for (int b = 0; b < G; ++b) {
        const double tau = start + half * (rule.nodes[b] + 1.0);
        acc += basis.values(order, tau) * (half * rule.weights[b] * kernel(t - tau));
      }
      inner.col(a) = acc;
    }
    W.noalias() += q[p] * inner.transpose();
  }
  return W;
}

}  // namespace

CosineBasis::CosineBasis(double horizon) : horizon_(horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw Error(ErrorKind::InvalidArgument, "basis horizon must be positive");
}

double CosineBasis::value(int index, double t) const noexcept {
  if (index == 0) return std::sqrt(1.0 / horizon_);
  return std::sqrt(2.0 / horizon_) * std::cos(index * std::numbers::pi * t / horizon_);
}

Eigen::VectorXd CosineBasis::values(int count, double t) const {
  Eigen::VectorXd v(count);
  for (int i = 0; i < count; ++i) v(i) = value(i, t);
  return v;
}

double basis_eval(const CosineBasis& basis, int index, double t) {
  if (index < 0) throw Error(ErrorKind::IndexNegative, "basis index " + std::to_string(index));
  if (!time_in_range(t, basis.horizon()))
    throw Error(ErrorKind::TimeOutOfRange, "t = " + std::to_string(t) + " outside [0, T]");
  return basis.value(index, t);
}

Eigen::MatrixXd project_kernel(const CosineBasis& basis, const Kernel& kernel, int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "truncation order must be >= 1");
  constexpr int kMaxDoublings = 5;
  int panels = std::max(8, order);
  Eigen::MatrixXd current = triangle_pass(basis, kernel, order, panels);
  for (int k = 0; k < kMaxDoublings; ++k) {
    panels *= 2;
    Eigen::MatrixXd refined = triangle_pass(basis, kernel, order, panels);
    const double change = (refined - current).cwiseAbs().maxCoeff();
    current = std::move(refined);
    if (change < kProjectionTolerance) return current;
  }
  throw Error(ErrorKind::QuadratureNotConverged,
              "triangle quadrature did not settle after " + std::to_string(panels) + " panels");
}

Eigen::MatrixXd project_kernel(const CosineBasis& basis, const ModalImpulseResponse& kernel, int order) {
  return project_kernel(basis, Kernel([&kernel](double eta) { return kernel(eta); }), order);
}

Eigen::VectorXd project_function(const CosineBasis& basis, const Kernel& f, int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "truncation order must be >= 1");
  const auto& rule = GaussLegendre32::instance();
  const int panels = std::max(8, order);
  const double width = basis.horizon() / panels;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(order);
  for (int p = 0; p < panels; ++p) {
    for (int a = 0; a < GaussLegendre32::kPoints; ++a) {
      const double t = p * width + 0.5 * width * (rule.nodes[a] + 1.0);
      c += basis.values(order, t) * (0.5 * width * rule.weights[a] * f(t));
    }
  }
  return c;
}

std::vector<double> synthesize_function(const CosineBasis& basis, std::span<const double> coefficients,
                                        std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  const int order = static_cast<int>(coefficients.size());
  for (double t : grid) {
    if (!time_in_range(t, basis.horizon()))
      throw Error(ErrorKind::TimeOutOfRange, "t = " + std::to_string(t) + " outside [0, T]");
    double acc = 0.0;
    for (int i = 0; i < order; ++i) acc += coefficients[i] * basis.value(i, t);
    out.push_back(acc);
  }
  return out;
}

}  // namespace shaping
