#include "shaping/presets.hpp"

#include "shaping/error.hpp"
#include "shaping/polynomial.hpp"

namespace shaping {

RationalTransferFunction dryden1(double alpha, double gamma) {
  const std::vector<double> num{alpha}, den{1.0, gamma};
  return RationalTransferFunction(num, den);
}

RationalTransferFunction dryden2(double alpha, double beta, double delta) {
  const std::vector<double> num{alpha, alpha * beta};
  return RationalTransferFunction(num, poly::time_constant_factor(delta, 2));
}

RationalTransferFunction dryden3(double alpha, double beta, double gamma, double delta) {
  const std::vector<double> num{0.0, alpha, alpha * beta};
  const auto den = poly::multiply(poly::time_constant_factor(gamma, 1), poly::time_constant_factor(delta, 2));
  return RationalTransferFunction(num, den);
}

RationalTransferFunction oscillatory_block(double theta, double xi) {
  const std::vector<double> num{1.0}, den{1.0, 2.0 * xi * theta, theta * theta};
  return RationalTransferFunction(num, den);
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all{
      {"dryden1", "alpha/(gamma s + 1), alpha=1, gamma=3", dryden1(1.0, 3.0), 5.0},
      {"dryden2", "alpha(beta s + 1)/(delta s + 1)^2, alpha=1, beta=2, delta=4", dryden2(1.0, 2.0, 4.0), 5.0},
      {"dryden3", "alpha s(beta s + 1)/((gamma s + 1)(delta s + 1)^2), alpha=1, beta=2, gamma=3, delta=4",
       dryden3(1.0, 2.0, 3.0, 4.0), 5.0},
      {"osc", "1/(theta^2 s^2 + 2 xi theta s + 1), theta=2, xi=1/2", oscillatory_block(2.0, 0.5), 5.0},
  };
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw Error(ErrorKind::InvalidArgument, "unknown preset '" + std::string(name) + "'");
}

}  // namespace shaping
