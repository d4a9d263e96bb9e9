#include "shaping/error_analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "shaping/error.hpp"
#include "shaping/impulse_response.hpp"
#include "shaping/io.hpp"

namespace shaping {

ErrorReport error_decomposition(const RationalTransferFunction& tf, double horizon, int order,
                                CompositionMode mode) {
  const auto kernel = impulse_from_fractions(partial_fractions(tf));
  const auto exact = exact_projection(tf, horizon, order);
  const auto rational = compose_rational(tf, horizon, order, mode);

  ErrorReport r;
  r.order = order;
  r.kernel_norm_sq = kernel_norm_squared(kernel, horizon);
  r.epsilon1 = r.kernel_norm_sq - frobenius_squared(exact.matrix);
  r.epsilon2 = frobenius_distance_squared(exact.matrix, rational.matrix);
  r.epsilon = r.epsilon1 + r.epsilon2;
  return r;
}

std::vector<ErrorReport> error_table(const RationalTransferFunction& tf, double horizon,
                                     std::span<const int> orders, CompositionMode mode) {
  if (orders.empty()) throw Error(ErrorKind::InvalidArgument, "order list is empty");
  for (std::size_t k = 1; k < orders.size(); ++k)
    if (orders[k] <= orders[k - 1]) throw Error(ErrorKind::InvalidArgument, "order list must ascend");
  std::vector<ErrorReport> out;
  out.reserve(orders.size());
  for (int L : orders) out.push_back(error_decomposition(tf, horizon, L, mode));
  return out;
}

double convergence_rate(std::span<const ErrorReport> reports) {
  if (reports.size() < 3) throw Error(ErrorKind::InvalidArgument, "convergence fit needs >= 3 reports");
  const auto used = reports.subspan(reports.size() > 4 ? reports.size() - 4 : 0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : used) {
    if (!(r.epsilon > 0.0))
      throw Error(ErrorKind::DegenerateFit, "epsilon must be positive at L = " + std::to_string(r.order));
    const double x = std::log(static_cast<double>(r.order));
    const double y = std::log(r.epsilon);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(used.size());
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw Error(ErrorKind::DegenerateFit, "orders must be distinct");
  return -(n * sxy - sx * sy) / denom;
}

std::string error_table_csv(std::span<const ErrorReport> reports) {
  std::string out = "L,epsilon,epsilon1,epsilon2\n";
  for (const auto& r : reports) {
    out += std::to_string(r.order);
    for (double v : {r.epsilon, r.epsilon1, r.epsilon2}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string error_table_markdown(std::span<const ErrorReport> reports, const std::string& row_label) {
  std::ostringstream os;
  os << "| |";
  for (const auto& r : reports) os << " L = " << r.order << " |";
  os << "\n|---|";
  for (std::size_t k = 0; k < reports.size(); ++k) os << "---|";
  os << "\n| " << row_label << " |";
  char buf[64];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, " %.6g (%.6g) |", r.epsilon, r.epsilon1);
    os << buf;
  }
  os << '\n';
  return os.str();
}

}  // namespace shaping
