#pragma once

#include <functional>
#include <string>

namespace shaping {

using WarningSink = std::function<void(const std::string&)>;

/// Replaces the warning sink (default: "warning: <msg>" on stderr). Returns the old one.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

/// Condition estimate above which linear solves emit a warning.
inline constexpr double kConditionWarnThreshold = 1e12;

}  // namespace shaping
