#include "shaping/impulse_response.hpp"

#include <cmath>

#include "shaping/error.hpp"

namespace shaping {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

}  // namespace

ModalImpulseResponse ModalImpulseResponse::unit_step() {
  return ModalImpulseResponse({{ModalKind::Exp, 0.0, 0.0, 1.0}});
}

double ModalImpulseResponse::operator()(double eta) const noexcept {
  if (eta <= 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& t : terms_) {
    const double decay = std::exp(t.rate * eta);
    switch (t.kind) {
      case ModalKind::Exp: acc += t.coefficient * decay; break;
      case ModalKind::TExp: acc += t.coefficient * eta * decay; break;
      case ModalKind::ExpCos: acc += t.coefficient * decay * std::cos(t.frequency * eta); break;
      case ModalKind::ExpSin: acc += t.coefficient * decay * std::sin(t.frequency * eta); break;
    }
  }
  return acc;
}

std::vector<ComplexExponential> ModalImpulseResponse::exponentials() const {
  std::vector<ComplexExponential> out;
  for (const auto& t : terms_) {
    const cd up(t.rate, t.frequency);
    const cd down(t.rate, -t.frequency);
    switch (t.kind) {
      case ModalKind::Exp: out.push_back({0, t.coefficient, t.rate}); break;
      case ModalKind::TExp: out.push_back({1, t.coefficient, t.rate}); break;
      case ModalKind::ExpCos:
        out.push_back({0, 0.5 * t.coefficient, up});
        out.push_back({0, 0.5 * t.coefficient, down});
        break;
      case ModalKind::ExpSin:
        out.push_back({0, t.coefficient / (2.0 * kI), up});
        out.push_back({0, -t.coefficient / (2.0 * kI), down});
        break;
    }
  }
  return out;
}

ModalImpulseResponse impulse_from_fractions(const PartialFractions& pf) {
  std::vector<ModalTerm> terms;
  for (const auto& f : pf.real_terms) {
    const double theta = f.time_constant();
    if (f.multiplicity == 1)
      terms.push_back({ModalKind::Exp, f.pole, 0.0, f.coefficient / theta});
    else if (f.multiplicity == 2)
      terms.push_back({ModalKind::TExp, f.pole, 0.0, f.coefficient / (theta * theta)});
    else
      throw Error(ErrorKind::UnsupportedPoleStructure, "real pole multiplicity above 2");
  }
  for (const auto& f : pf.pair_terms) {
    if (!(f.theta > 0.0) || !(std::abs(f.xi) < 1.0))
      throw Error(ErrorKind::UnsupportedPoleStructure, "pair term needs theta > 0 and |xi| < 1");
    // theta^2 s^2 + 2 xi theta s + 1 = theta^2 ((s - mu)^2 + nu^2)
    const double mu = -f.xi / f.theta;
    const double nu = std::sqrt(1.0 - f.xi * f.xi) / f.theta;
    const double th2 = f.theta * f.theta;
    const double sin_coeff = (f.coefficient + f.s_coefficient * mu) / (th2 * nu);
    if (sin_coeff != 0.0) terms.push_back({ModalKind::ExpSin, mu, nu, sin_coeff});
    if (f.s_coefficient != 0.0) terms.push_back({ModalKind::ExpCos, mu, nu, f.s_coefficient / th2});
  }
  return ModalImpulseResponse(std::move(terms));
}

std::complex<double> exponential_moment(int power, std::complex<double> exponent, double t) {
  if (power < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
  if (t == 0.0) return 0.0;
  const cd z = exponent * t;
  if (std::abs(z) < 0.5) {
    // t^{p+1} sum_k z^k / (k! (p + k + 1))
    cd term = 1.0, acc = 0.0;
    for (int k = 0; k < 60; ++k) {
      const cd add = term / static_cast<double>(power + k + 1);
      acc += add;
      if (std::abs(add) < 1e-18 * std::abs(acc)) break;
      term *= z / static_cast<double>(k + 1);
    }
    return acc * std::pow(t, power + 1);
  }
  const cd growth = std::exp(z);
  cd moment = (growth - 1.0) / exponent;
  double tp = 1.0;
  for (int p = 1; p <= power; ++p) {
    tp *= t;
    moment = (tp * growth - static_cast<double>(p) * moment) / exponent;
  }
  return moment;
}

double variance_at(const ModalImpulseResponse& k, double t) {
  if (t < 0.0) throw Error(ErrorKind::TimeOutOfRange, "variance_at needs t >= 0");
  const auto ex = k.exponentials();
  cd acc = 0.0;
  for (const auto& a : ex)
    for (const auto& b : ex)
      acc += a.weight * b.weight * exponential_moment(a.power + b.power, a.exponent + b.exponent, t);
  return acc.real();
}

double kernel_norm_squared(const ModalImpulseResponse& k, double horizon) {
  if (!(horizon > 0.0)) throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
  const auto ex = k.exponentials();
  cd acc = 0.0;
  for (const auto& a : ex) {
    for (const auto& b : ex) {
      const int p = a.power + b.power;
      const cd s = a.exponent + b.exponent;
      acc += a.weight * b.weight *
             (horizon * exponential_moment(p, s, horizon) - exponential_moment(p + 1, s, horizon));
    }
  }
  return acc.real();
}

SampleTrajectory ito_sum_simulate(const ModalImpulseResponse& k, double horizon, std::size_t steps,
                                  GaussianSource& noise) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
  SampleTrajectory out;
  out.method = SimulationMethod::ItoSum;
  out.seed = noise.seed();
  out.stream_id = noise.stream_id();
  out.grid = uniform_grid(horizon, steps + 1);
  out.values.assign(steps + 1, 0.0);

  const double h = horizon / static_cast<double>(steps);
  const double sqrt_h = std::sqrt(h);
  const auto ex = k.exponentials();

  // Per exponential: plain[j] = sum_{i<j} e^{s(t_j - t_i)} xi_i and
  // ramp[j] = sum_{i<j} (t_j - t_i) e^{s(t_j - t_i)} xi_i, both advanced one step at a time.
  std::vector<cd> step_factor(ex.size()), plain(ex.size(), 0.0), ramp(ex.size(), 0.0);
  for (std::size_t e = 0; e < ex.size(); ++e) step_factor[e] = std::exp(ex[e].exponent * h);

  for (std::size_t j = 0; j < steps; ++j) {
    const double xi = noise.next();
    cd value = 0.0;
    for (std::size_t e = 0; e < ex.size(); ++e) {
      ramp[e] = step_factor[e] * (ramp[e] + h * (plain[e] + xi));
      plain[e] = step_factor[e] * (plain[e] + xi);
      value += ex[e].weight * (ex[e].power == 0 ? plain[e] : ramp[e]);
    }
    out.values[j + 1] = sqrt_h * value.real();
  }
  return out;
}

}  // namespace shaping
