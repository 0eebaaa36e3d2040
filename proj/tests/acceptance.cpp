// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <chrono>
#include <cstdio>
#include <thread>

#include "lqlab/log.hpp"
#include "lqlab/verify.hpp"

int main() {
  lq::log::set_quiet(true);
  lq::VerifyOptions opts;
  opts.threads = std::max(1u, std::thread::hardware_concurrency());
  int failed = 0;
  for (const auto& c : lq::criteria()) {
    const auto start = std::chrono::steady_clock::now();
    lq::CriterionResult r;
    try {
      r = c.run(opts);
    } catch (const std::exception& e) {
      r = {c.id, std::string(c.suite), false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d (%s): %s [%.1fs]\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str(), secs);
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(lq::criteria().size()) - failed, lq::criteria().size());
  return failed == 0 ? 0 : 1;
}
