#include "shaping/log.hpp"

#include <iostream>
#include <mutex>

namespace shaping {

namespace {

std::mutex sink_mutex;
WarningSink& sink() {
  static WarningSink s = [](const std::string& m) { std::clog << "warning: " << m << '\n'; };
  return s;
}

}  // namespace

WarningSink set_warning_sink(WarningSink next) {
  std::lock_guard lock(sink_mutex);
  auto prev = std::move(sink());
  sink() = std::move(next);
  return prev;
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex);
  if (sink()) sink()(message);
}

}  // namespace shaping
