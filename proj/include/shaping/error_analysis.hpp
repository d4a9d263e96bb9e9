#pragma once

#include <span>
#include <string>
#include <vector>

#include "shaping/spectral_operators.hpp"
#include "shaping/transfer_function.hpp"

namespace shaping {

/// Mean-square error of the truncated spectral shaping filter at one truncation order.
///
/// epsilon1 is the Parseval remainder ||k||^2 - ||W~||^2 of the exact projection W~;
/// epsilon2 = ||W~ - W^||^2 is what the rational-in-P construction W^ adds on top.
/// The two parts are orthogonal, so epsilon = epsilon1 + epsilon2.
struct ErrorReport {
  int order = 0;
  double epsilon = 0.0;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double kernel_norm_sq = 0.0;
};

ErrorReport error_decomposition(const RationalTransferFunction& tf, double horizon, int order,
                                CompositionMode mode = CompositionMode::Factored);

/// One report per order; orders must be non-empty and strictly ascending.
std::vector<ErrorReport> error_table(const RationalTransferFunction& tf, double horizon,
                                     std::span<const int> orders,
                                     CompositionMode mode = CompositionMode::Factored);

/// p in epsilon ~ C / L^p from a least-squares fit of log epsilon on log L over the
/// largest four orders (all of them if fewer than four). Needs at least three reports.
double convergence_rate(std::span<const ErrorReport> reports);

/// "L,epsilon,epsilon1,epsilon2" rows.
std::string error_table_csv(std::span<const ErrorReport> reports);

/// Markdown with one column per L and "epsilon (epsilon1)" cells.
std::string error_table_markdown(std::span<const ErrorReport> reports, const std::string& row_label);

}  // namespace shaping
