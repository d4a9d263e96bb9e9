#include "shaping/spectral_operators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "shaping/error.hpp"
#include "shaping/log.hpp"

namespace shaping {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;
using cd = std::complex<double>;

// (-1)^k
constexpr double alt(int k) noexcept { return (k % 2 == 0) ? 1.0 : -1.0; }

void check_order(int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "truncation order must be >= 1");
}

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
}

SpectralOperator make(Eigen::MatrixXd m, double horizon, Provenance p) {
  const int order = static_cast<int>(m.rows());
  return {std::move(m), horizon, order, p};
}

/// LU of a square matrix. Fails when the condition estimate exceeds `max_condition`,
/// warns when it exceeds kConditionWarnThreshold.
Eigen::PartialPivLU<Eigen::MatrixXd> checked_lu(const Eigen::MatrixXd& m, ErrorKind kind, std::string_view what,
                                                double max_condition) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const double rcond = lu.rcond();
  const double condition = rcond > 0.0 ? 1.0 / rcond : INFINITY;
  if (!(condition <= max_condition)) {
    std::ostringstream msg;
    msg << what << " is singular at this truncation (condition estimate " << condition << ")";
    throw Error(kind, msg.str());
  }
  if (condition > kConditionWarnThreshold) {
    std::ostringstream msg;
    msg << what << " condition estimate " << condition;
    warn(msg.str());
  }
  return lu;
}

constexpr double kSingularCondition = 1e15;

// a_n P^n + ... + a_0 E by Horner.
Eigen::MatrixXd polynomial_in(std::span<const double> c, const Eigen::MatrixXd& p) {
  const auto n = p.rows();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * p;
    acc.diagonal().array() += *it;
  }
  return acc;
}

struct Factor {
  std::vector<double> coeffs;  // ascending polynomial in s
  int power;
};

/// Splits a polynomial into time-constant factors (theta s + 1), s, and
/// (theta^2 s^2 + 2 xi theta s + 1) and returns the leftover constant.
double time_constant_factors(std::span<const double> c, std::vector<Factor>& out) {
  const auto trimmed = poly::strip_trailing_zeros(c);
  double scale = trimmed.back();
  for (const auto& root : polynomial_roots(trimmed)) {
    const cd l = root.value;
    if (l.imag() < 0.0) continue;
    if (std::abs(l) <= kRootClusterTolerance) {
      out.push_back({{0.0, 1.0}, root.multiplicity});
    } else if (l.imag() == 0.0) {
      // s - l = -l (theta s + 1)
      out.push_back({{1.0, -1.0 / l.real()}, root.multiplicity});
      scale *= std::pow(-l.real(), root.multiplicity);
    } else {
      // (s - l)(s - conj l) = |l|^2 (theta^2 s^2 + 2 xi theta s + 1)
      const double mag = std::abs(l);
      const double theta = 1.0 / mag;
      const double xi = -l.real() / mag;
      out.push_back({{1.0, 2.0 * xi * theta, theta * theta}, root.multiplicity});
      scale *= std::pow(mag * mag, root.multiplicity);
    }
  }
  return scale;
}

}  // namespace

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::ClosedForm: return "closed_form";
    case Provenance::RationalInP: return "rational_in_P";
    case Provenance::Quadrature: return "quadrature";
  }
  return "unknown";
}

std::string_view to_string(CompositionMode mode) noexcept {
  return mode == CompositionMode::Polynomial ? "polynomial" : "factored";
}

BlockParameters BlockParameters::aperiodic(double theta) {
  if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "time constant must be positive");
  BlockParameters b;
  b.theta = theta;
  b.xi = 1.0;
  b.mu = -1.0 / theta;
  b.nu = 0.0;
  b.lambda = 1.0 / theta;
  b.eta_sq = b.mu * b.mu;
  return b;
}

BlockParameters BlockParameters::oscillatory(double theta, double xi) {
  if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "time constant must be positive");
  if (!(xi > -1.0 && xi < 1.0)) throw Error(ErrorKind::InvalidArgument, "damping must lie in (-1, 1)");
  BlockParameters b;
  b.theta = theta;
  b.xi = xi;
  b.mu = -xi / theta;
  b.nu = std::sqrt(1.0 - xi * xi) / theta;
  b.lambda = 1.0 / theta;
  b.eta_sq = b.mu * b.mu - b.nu * b.nu;
  return b;
}

double BlockParameters::phi_plus(int i, double T) const noexcept { return mu * mu * T * T + i * i * pi * pi; }
double BlockParameters::phi_minus(int i, double T) const noexcept { return mu * mu * T * T - i * i * pi * pi; }
double BlockParameters::psi_plus(int i, double T) const noexcept {
  return lambda * lambda * T * T + i * i * pi * pi;
}
double BlockParameters::psi_minus(int i, double T) const noexcept {
  return lambda * lambda * T * T - i * i * pi * pi;
}

SpectralOperator integration_matrix(double T, int L) {
  check_horizon(T);
  check_order(L);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(L, L);
  c(0, 0) = 0.5;
  for (int i = 1; i < L; ++i) {
    c(0, i) = sqrt2 * (1.0 - alt(i)) / (i * i * pi * pi);
    c(i, 0) = -c(0, i);
    for (int j = 1; j < i; ++j) {
      c(i, j) = 2.0 * (alt(i + j) - 1.0) / ((i * i - j * j) * pi * pi);
      c(j, i) = -c(i, j);
    }
  }
  return make(T * c, T, Provenance::ClosedForm);
}

SpectralOperator differentiation_matrix(double T, int L) {
  check_horizon(T);
  check_order(L);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(L, L);
  c(0, 0) = 1.0;
  for (int i = 1; i < L; ++i) {
    c(i, 0) = sqrt2;
    c(0, i) = alt(i) * sqrt2;
    c(i, i) = 2.0;
    for (int j = 1; j < i; ++j) {
      c(i, j) = 2.0 * (i * i - alt(i + j) * j * j) / static_cast<double>(i * i - j * j);
      c(j, i) = alt(i + j) * c(i, j);
    }
  }
  return make(c / T, T, Provenance::ClosedForm);
}

SpectralOperator identity_operator(double T, int L) {
  check_horizon(T);
  check_order(L);
  return make(Eigen::MatrixXd::Identity(L, L), T, Provenance::ClosedForm);
}

SpectralOperator aperiodic_matrix(const BlockParameters& b, double T, int L) {
  check_horizon(T);
  check_order(L);
  if (!(b.theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "time constant must be positive");
  const double mu = b.mu;
  const double muT = mu * T;
  const double e = std::exp(muT);

  Eigen::MatrixXd c(L, L);
  c(0, 0) = (e - muT - 1.0) / (mu * mu * T);
  for (int i = 1; i < L; ++i) {
    c(0, i) = sqrt2 * T * (e - alt(i)) / b.phi_plus(i, T);
    c(i, 0) = alt(i) * c(0, i);
    for (int j = 1; j <= i; ++j) {
      const double gamma = (i == j) ? muT / 2.0 : j * j * (1.0 - alt(i + j)) / static_cast<double>(i * i - j * j);
      c(i, j) = 2.0 * T / b.phi_plus(j, T) * (muT * muT * (alt(i) * e - 1.0) / b.phi_plus(i, T) - gamma);
      c(j, i) = alt(i + j) * c(i, j);
    }
  }
  return make(-mu * c, T, Provenance::ClosedForm);
}

SpectralOperator aperiodic2_matrix(const BlockParameters& b, double T, int L) {
  check_horizon(T);
  check_order(L);
  if (!(b.theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "time constant must be positive");
  const double mu = b.mu;
  const double muT = mu * T;
  const double e = std::exp(muT);

  Eigen::MatrixXd c(L, L);
  c(0, 0) = ((muT - 2.0) * e + muT + 2.0) / (mu * mu * mu * T);
  for (int i = 1; i < L; ++i) {
    const double fi = b.phi_plus(i, T);
    c(0, i) = sqrt2 * T * T * (2.0 * muT * (alt(i) - e) + fi * e) / (fi * fi);
    c(i, 0) = alt(i) * c(0, i);
    for (int j = 1; j <= i; ++j) {
      const double fj = b.phi_plus(j, T);
      const double zeta = (i == j) ? b.phi_minus(j, T)
                                   : 4.0 * mu * j * j * T * (1.0 - alt(i + j)) / static_cast<double>(i * i - j * j);
      c(i, j) = 2.0 * mu * T * T * T / (fi * fj) *
                    ((1.0 - alt(i) * e) * (b.phi_minus(i, T) / fi + b.phi_minus(j, T) / fj) + alt(i) * muT * e) +
                zeta * T * T / (fj * fj);
      c(j, i) = alt(i + j) * c(i, j);
    }
  }
  return make(mu * mu * c, T, Provenance::ClosedForm);
}

SpectralOperator oscillatory_matrix(const BlockParameters& b, double T, int L) {
  check_horizon(T);
  check_order(L);
  if (!(b.theta > 0.0) || !(b.nu > 0.0))
    throw Error(ErrorKind::InvalidArgument, "oscillatory block needs theta > 0 and |xi| < 1");
  const double mu = b.mu, nu = b.nu, eta2 = b.eta_sq;
  const double lam2 = b.lambda * b.lambda;
  const double lam4 = lam2 * lam2;
  const double T2 = T * T, T3 = T2 * T, T4 = T2 * T2;
  const double e = std::exp(mu * T);
  const double ecos = e * std::cos(nu * T);
  const double esin = e * std::sin(nu * T);

  // (psi_i^+)^2 - (2 pi nu i T)^2
  std::vector<double> den(L);
  for (int i = 0; i < L; ++i) {
    const double pp = b.psi_plus(i, T);
    const double cross = 2.0 * pi * nu * i * T;
    den[i] = pp * pp - cross * cross;
    if (std::abs(den[i]) <= 1e-12 * pp * pp)
      throw Error(ErrorKind::ResonantParameters,
                  "nu T = " + std::to_string(nu * T) + " resonates with basis index " + std::to_string(i));
  }

  Eigen::MatrixXd c(L, L);
  c(0, 0) = (2.0 * mu * nu * (1.0 - ecos) + eta2 * esin + nu * lam2 * T) / (lam4 * T);
  for (int i = 1; i < L; ++i) {
    c(0, i) = sqrt2 * T * (2.0 * mu * nu * T2 * (alt(i) - ecos) + (eta2 * T2 + i * i * pi * pi) * esin) / den[i];
    c(i, 0) = alt(i) * c(0, i);
    for (int j = 1; j <= i; ++j) {
      const double dd = den[i] * den[j];
      const double ij = static_cast<double>(i) * j;
      const double kappa = (i == j) ? b.psi_minus(j, T)
                                    : 4.0 * mu * j * j * T * (1.0 - alt(i + j)) / static_cast<double>(i * i - j * j);
      const double first = 2.0 * mu * nu * (lam4 * T4 - ij * ij * pi * pi * pi * pi) * (1.0 - alt(i) * ecos) / dd;
      const double second =
          alt(i) * (eta2 * lam4 * T4 + pi * pi * (lam4 * (i * i + j * j) * T2 + pi * pi * ij * ij * eta2)) * esin / dd;
      c(i, j) = 2.0 * T3 * (first + second) + nu * kappa * T2 / den[j];
      c(j, i) = alt(i + j) * c(i, j);
    }
  }
  return make(c / (b.theta * std::sqrt(1.0 - b.xi * b.xi)), T, Provenance::ClosedForm);
}

Eigen::MatrixXcd exponential_kernel_matrix(std::complex<double> s, double T, int L) {
  check_horizon(T);
  check_order(L);
  // Inner integral int_0^t e^{s(t - tau)} cos(w tau) d tau = (s e^{st} - s cos wt + w sin wt)/(s^2 + w^2);
  // the outer integral against cos(w_i t) is elementary.
  const cd es = std::exp(s * T);
  std::vector<double> w(L), norm(L);
  std::vector<cd> den(L);
  for (int i = 0; i < L; ++i) {
    w[i] = i * pi / T;
    norm[i] = (i == 0) ? std::sqrt(1.0 / T) : std::sqrt(2.0 / T);
    den[i] = s * s + w[i] * w[i];
    if (std::abs(den[i]) <= 1e-12 * (std::norm(s) + w[i] * w[i]))
      throw Error(ErrorKind::ResonantParameters, "kernel exponent resonates with a basis frequency");
  }
  Eigen::MatrixXcd out(L, L);
  for (int i = 0; i < L; ++i) {
    const cd cos_exp = s * (alt(i) * es - 1.0) / den[i];  // int_0^T cos(w_i t) e^{st} dt
    for (int j = 0; j < L; ++j) {
      const double cos_cos = (i != j) ? 0.0 : (i == 0 ? T : T / 2.0);
      const double cos_sin =
          (i == j) ? 0.0 : (1.0 - alt(i + j)) * w[j] / (w[j] * w[j] - w[i] * w[i]);  // int cos(w_i t) sin(w_j t)
      out(i, j) = norm[i] * norm[j] * (s * cos_exp - s * cos_cos + w[j] * cos_sin) / den[j];
    }
  }
  return out;
}

SpectralOperator compose_rational(std::span<const double> num, std::span<const double> den, double T, int L,
                                  CompositionMode mode) {
  check_horizon(T);
  check_order(L);
  const auto a = poly::strip_trailing_zeros(den);
  const auto b = poly::strip_trailing_zeros(num);
  if (a.empty()) throw Error(ErrorKind::ZeroLeadingCoefficient, "denominator is identically zero");
  if (b.size() > a.size()) throw Error(ErrorKind::NotProper, "numerator degree exceeds denominator degree");
  if (b.empty()) return make(Eigen::MatrixXd::Zero(L, L), T, Provenance::RationalInP);

  const Eigen::MatrixXd P = differentiation_matrix(T, L).matrix;

  if (mode == CompositionMode::Polynomial) {
    const auto lu = checked_lu(polynomial_in(a, P), ErrorKind::SingularDenominatorMatrix, "denominator matrix",
                               kSingularCondition);
    return make(lu.solve(polynomial_in(b, P)), T, Provenance::RationalInP);
  }

  std::vector<Factor> den_factors, num_factors;
  const double gain = time_constant_factors(b, num_factors) / time_constant_factors(a, den_factors);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(L, L);
  for (const auto& f : num_factors) {
    const Eigen::MatrixXd m = polynomial_in(f.coeffs, P);
    for (int k = 0; k < f.power; ++k) acc = m * acc;
  }
  for (const auto& f : den_factors) {
    const auto lu = checked_lu(polynomial_in(f.coeffs, P), ErrorKind::SingularDenominatorMatrix,
                               "denominator factor matrix", kSingularCondition);
    for (int k = 0; k < f.power; ++k) acc = lu.solve(acc);
  }
  return make(gain * acc, T, Provenance::RationalInP);
}

SpectralOperator compose_rational(const RationalTransferFunction& tf, double T, int L, CompositionMode mode) {
  return compose_rational(tf.num(), tf.den(), T, L, mode);
}

SpectralOperator exact_projection(const RationalTransferFunction& tf, double T, int L) {
  check_horizon(T);
  check_order(L);
  const auto pf = partial_fractions(tf);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(L, L);
  for (const auto& f : pf.real_terms) {
    const double theta = f.time_constant();
    if (!(theta > 0.0))
      throw Error(ErrorKind::UnsupportedPoleStructure, "closed-form blocks need stable real poles");
    const auto params = BlockParameters::aperiodic(theta);
    if (f.multiplicity == 1)
      w += f.coefficient * aperiodic_matrix(params, T, L).matrix;
    else
      w += f.coefficient * aperiodic2_matrix(params, T, L).matrix;
  }
  for (const auto& f : pf.pair_terms) {
    const auto params = BlockParameters::oscillatory(f.theta, f.xi);
    // (c0 + c1 s)/(theta^2 s^2 + 2 xi theta s + 1): the sine part is K scaled by (c0 + c1 mu),
    // the cosine part is c1/theta^2 times the projection of e^{mu eta} cos(nu eta).
    const double sin_weight = f.coefficient + f.s_coefficient * params.mu;
    if (sin_weight != 0.0) w += sin_weight * oscillatory_matrix(params, T, L).matrix;
    if (f.s_coefficient != 0.0) {
      const Eigen::MatrixXd cos_part = exponential_kernel_matrix({params.mu, params.nu}, T, L).real();
      w += (f.s_coefficient / (f.theta * f.theta)) * cos_part;
    }
  }
  return make(std::move(w), T, Provenance::ClosedForm);
}

SpectralOperator whitening_operator(const SpectralOperator& w) {
  const auto lu = checked_lu(w.matrix, ErrorKind::SingularOperator, "operator", kConditionWarnThreshold);
  SpectralOperator out = w;
  out.matrix = lu.inverse();
  return out;
}

SpectralOperator whitening_rational(const RationalTransferFunction& tf, double T, int L) {
  check_horizon(T);
  check_order(L);
  const Eigen::MatrixXd P = differentiation_matrix(T, L).matrix;
  const auto lu = checked_lu(polynomial_in(tf.num(), P), ErrorKind::SingularOperator, "numerator matrix",
                             kConditionWarnThreshold);
  return make(lu.solve(polynomial_in(tf.den(), P)), T, Provenance::RationalInP);
}

double frobenius_squared(const Eigen::MatrixXd& m) {
  long double acc = 0.0L;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) acc += static_cast<long double>(m(i, j)) * m(i, j);
  return static_cast<double>(acc);
}

double frobenius_distance_squared(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::InvalidArgument, "matrix shapes differ");
  long double acc = 0.0L;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const long double d = static_cast<long double>(a(i, j)) - b(i, j);
      acc += d * d;
    }
  return static_cast<double>(acc);
}

}  // namespace shaping
