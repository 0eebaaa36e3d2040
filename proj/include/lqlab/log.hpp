#pragma once

#include <string_view>

namespace lq::log {

void warn(std::string_view message);
void info(std::string_view message);

// Silences info output; warnings always go to stderr.
void set_quiet(bool quiet);

}  // namespace lq::log
