#pragma once

#include <array>

namespace shaping {

/// 32-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre32 {
  static constexpr int kPoints = 32;
  std::array<double, kPoints> nodes{};
  std::array<double, kPoints> weights{};

  static const GaussLegendre32& instance();
};

}  // namespace shaping
