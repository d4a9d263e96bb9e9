#include "shaping/trajectory.hpp"

#include "shaping/error.hpp"

namespace shaping {

std::string_view to_string(SimulationMethod method) noexcept {
  switch (method) {
    case SimulationMethod::Spectral: return "spectral";
    case SimulationMethod::EulerMaruyama: return "euler_maruyama";
    case SimulationMethod::ItoSum: return "ito_sum";
  }
  return "unknown";
}

std::vector<double> uniform_grid(double horizon, std::size_t points) {
  if (points < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  if (!(horizon > 0.0)) throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
  std::vector<double> grid(points);
  // horizon * k / (points - 1) keeps shared nodes of nested grids bit-identical
  const double intervals = static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) grid[k] = horizon * static_cast<double>(k) / intervals;
  grid.back() = horizon;
  return grid;
}

}  // namespace shaping
