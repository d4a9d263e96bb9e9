#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "shaping/simulation.hpp"
#include "shaping/spectral_operators.hpp"
#include "shaping/state_space.hpp"
#include "shaping/transfer_function.hpp"

namespace shaping {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Ordered "# key: value" lines preceding CSV payloads.
using CsvHeader = std::vector<std::pair<std::string, std::string>>;
void write_header(std::ostream& os, const CsvHeader& header);

/// "t,x"
void write_trajectory_csv(std::ostream& os, const SampleTrajectory& tr);
/// "t,x_1,...,x_N" on the grid of the first trajectory.
void write_trajectories_wide_csv(std::ostream& os, std::span<const SampleTrajectory> trs);
/// "t,mean,var,stderr"
void write_stats_csv(std::ostream& os, const EnsembleStats& stats);
/// Dense rows, no column header.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);
/// "i,j,value"
void write_matrix_triplets_csv(std::ostream& os, const Eigen::MatrixXd& m);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
/// {"T", "L", "provenance", "tf", "matrix"}
nlohmann::json operator_to_json(const SpectralOperator& op, const nlohmann::json& tf_meta);
nlohmann::json transfer_function_to_json(const RationalTransferFunction& tf);
nlohmann::json realization_to_json(const StateSpaceRealization& r);

/// {"num": [b0, ...], "den": [a0, ...]}
RationalTransferFunction parse_transfer_function(const nlohmann::json& j);
RationalTransferFunction parse_transfer_function(const std::string& text);

}  // namespace shaping
