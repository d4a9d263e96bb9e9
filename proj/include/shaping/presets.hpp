#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "shaping/transfer_function.hpp"

namespace shaping {

/// Dryden-family shapes, parameters alpha, beta, gamma, delta:
///   H1 = alpha / (gamma s + 1)
///   H2 = alpha (beta s + 1) / (delta s + 1)^2
///   H3 = alpha s (beta s + 1) / ((gamma s + 1)(delta s + 1)^2)
RationalTransferFunction dryden1(double alpha, double gamma);
RationalTransferFunction dryden2(double alpha, double beta, double delta);
RationalTransferFunction dryden3(double alpha, double beta, double gamma, double delta);

/// 1 / (theta^2 s^2 + 2 xi theta s + 1)
RationalTransferFunction oscillatory_block(double theta, double xi);

struct Preset {
  std::string name;
  std::string description;
  RationalTransferFunction tf;
  double horizon;
};

/// dryden1..3 at alpha=1, beta=2, gamma=3, delta=4 and osc at theta=2, xi=1/2; all with T=5.
const std::vector<Preset>& presets();
const Preset& find_preset(std::string_view name);

}  // namespace shaping
