#include "lqlab/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace lq::log {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto l = spdlog::stderr_color_mt("lqlab");
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::info);
    return l;
  }();
  return instance;
}

}  // namespace

void warn(std::string_view message) { logger()->warn("{}", message); }

void info(std::string_view message) { logger()->info("{}", message); }

void set_quiet(bool quiet) { logger()->set_level(quiet ? spdlog::level::err : spdlog::level::info); }

}  // namespace lq::log
