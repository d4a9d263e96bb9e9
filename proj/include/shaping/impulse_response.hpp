#pragma once

#include <complex>
#include <vector>

#include "shaping/random.hpp"
#include "shaping/trajectory.hpp"
#include "shaping/transfer_function.hpp"

namespace shaping {

enum class ModalKind {
  Exp,     // c e^{rate eta}
  TExp,    // c eta e^{rate eta}
  ExpCos,  // c e^{rate eta} cos(frequency eta)
  ExpSin,  // c e^{rate eta} sin(frequency eta)
};

struct ModalTerm {
  ModalKind kind = ModalKind::Exp;
  double rate = 0.0;
  double frequency = 0.0;
  double coefficient = 0.0;
};

/// eta^power * weight * e^{exponent eta}; a real modal term is a sum of one or two of these.
struct ComplexExponential {
  int power = 0;
  std::complex<double> weight;
  std::complex<double> exponent;
};

/// Impulse response k(eta) of a stationary filter as a finite sum of modal terms.
/// k(eta) = 0 for eta <= 0.
class ModalImpulseResponse {
 public:
  ModalImpulseResponse() = default;
  explicit ModalImpulseResponse(std::vector<ModalTerm> terms) : terms_(std::move(terms)) {}

  /// k(eta) = 1 for eta > 0, the integrator kernel.
  static ModalImpulseResponse unit_step();

  const std::vector<ModalTerm>& terms() const noexcept { return terms_; }
  double operator()(double eta) const noexcept;
  std::vector<ComplexExponential> exponentials() const;

 private:
  std::vector<ModalTerm> terms_;
};

ModalImpulseResponse impulse_from_fractions(const PartialFractions& pf);

/// int_0^t eta^power e^{exponent eta} d eta, stable for small |exponent t|.
std::complex<double> exponential_moment(int power, std::complex<double> exponent, double t);

/// E x^2(t) = int_0^t k^2(eta) d eta.
double variance_at(const ModalImpulseResponse& k, double t);

/// ||k(t - tau)||^2 over the causal triangle of [0, T]^2, i.e. int_0^T (T - eta) k^2(eta) d eta.
double kernel_norm_squared(const ModalImpulseResponse& k, double horizon);

/// Left-endpoint Ito sum x(t_j) = sqrt(h) sum_{i<j} k(t_j - t_i) xi_i on `steps` uniform
/// intervals. Consumes `steps` variates from `noise`.
SampleTrajectory ito_sum_simulate(const ModalImpulseResponse& k, double horizon, std::size_t steps,
                                  GaussianSource& noise);

}  // namespace shaping
