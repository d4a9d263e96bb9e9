#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace shaping {

enum class SimulationMethod { Spectral, EulerMaruyama, ItoSum };

std::string_view to_string(SimulationMethod method) noexcept;

struct SampleTrajectory {
  std::vector<double> grid;
  std::vector<double> values;
  SimulationMethod method = SimulationMethod::Spectral;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  /// Spectral coefficients X = W V (spectral method only).
  std::vector<double> coefficients;
};

/// `points` equally spaced times from 0 to horizon inclusive; points >= 2.
std::vector<double> uniform_grid(double horizon, std::size_t points);

}  // namespace shaping
