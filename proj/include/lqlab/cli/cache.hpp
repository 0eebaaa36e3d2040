#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "lqlab/lcentral.hpp"

namespace lq::cli {

// Append-only JSON-lines store of central values keyed by (q, character index).
// Entries written by another library version or method are ignored.
class LValueCache {
 public:
  LValueCache(std::filesystem::path path, EvalMethod method);

  const std::filesystem::path& path() const { return path_; }
  std::optional<CentralValue> find(u64 q, std::uint32_t index) const;
  void append(u64 q, std::uint32_t index, const CentralValue& cv);
  std::size_t size() const { return entries_.size(); }
  std::size_t skipped_lines() const { return skipped_; }

 private:
  std::filesystem::path path_;
  EvalMethod method_;
  std::map<std::pair<u64, std::uint32_t>, CentralValue> entries_;
  std::size_t skipped_ = 0;
};

// Cache path from the explicit option, else $LQLAB_CACHE_DIR/lvalues.jsonl, else none.
std::optional<std::filesystem::path> default_cache_path(const std::string& explicit_path, bool disabled);

// Even primitive central values mod q, reading what the cache holds and
// appending only the missing characters. Missing values always come from the
// full-table route, so a partial cache reproduces a cold run exactly.
CentralValueTable cached_central_values(const ContextPtr& ctx, EvalMethod method, LValueCache* cache,
                                        unsigned threads);

}  // namespace lq::cli
