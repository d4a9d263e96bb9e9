#include "shaping/io.hpp"

#include <charconv>
#include <ostream>

#include "shaping/error.hpp"

namespace shaping {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_header(std::ostream& os, const CsvHeader& header) {
  for (const auto& [key, value] : header) os << "# " << key << ": " << value << '\n';
}

void write_trajectory_csv(std::ostream& os, const SampleTrajectory& tr) {
  os << "t,x\n";
  for (std::size_t k = 0; k < tr.grid.size(); ++k)
    os << format_double(tr.grid[k]) << ',' << format_double(tr.values[k]) << '\n';
}

void write_trajectories_wide_csv(std::ostream& os, std::span<const SampleTrajectory> trs) {
  if (trs.empty()) return;
  const auto& grid = trs.front().grid;
  os << 't';
  for (std::size_t n = 0; n < trs.size(); ++n) {
    if (trs[n].grid != grid) throw Error(ErrorKind::GridMismatch, "trajectory grids differ");
    os << ",x_" << n + 1;
  }
  os << '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    os << format_double(grid[k]);
    for (const auto& tr : trs) os << ',' << format_double(tr.values[k]);
    os << '\n';
  }
}

void write_stats_csv(std::ostream& os, const EnsembleStats& stats) {
  os << "t,mean,var,stderr\n";
  for (std::size_t k = 0; k < stats.grid.size(); ++k)
    os << format_double(stats.grid[k]) << ',' << format_double(stats.mean[k]) << ','
       << format_double(stats.variance[k]) << ',' << format_double(stats.stderr_mean[k]) << '\n';
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

void write_matrix_triplets_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  os << "i,j,value\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << i << ',' << j << ',' << format_double(m(i, j)) << '\n';
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json operator_to_json(const SpectralOperator& op, const nlohmann::json& tf_meta) {
  return {{"T", op.horizon},
          {"L", op.order},
          {"provenance", std::string(to_string(op.provenance))},
          {"tf", tf_meta},
          {"matrix", matrix_to_json(op.matrix)}};
}

nlohmann::json transfer_function_to_json(const RationalTransferFunction& tf) {
  return {{"num", tf.num()}, {"den", tf.den()}};
}

nlohmann::json realization_to_json(const StateSpaceRealization& r) {
  std::vector<double> b(r.B.data(), r.B.data() + r.B.size());
  std::vector<double> c(r.C.data(), r.C.data() + r.C.size());
  return {{"A", matrix_to_json(r.A)}, {"B", b}, {"C", c}};
}

RationalTransferFunction parse_transfer_function(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw Error(ErrorKind::ParseError, R"(transfer function must look like {"num": [...], "den": [...]})");
  try {
    const auto num = j.at("num").get<std::vector<double>>();
    const auto den = j.at("den").get<std::vector<double>>();
    return RationalTransferFunction(num, den);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

RationalTransferFunction parse_transfer_function(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return parse_transfer_function(j);
}

}  // namespace shaping
