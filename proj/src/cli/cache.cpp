#include "lqlab/cli/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"
#include "lqlab/errors.hpp"
#include "lqlab/log.hpp"

namespace lq::cli {

using nlohmann::json;

LValueCache::LValueCache(std::filesystem::path path, EvalMethod method) : path_(std::move(path)), method_(method) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (j.at("version").get<std::string>() != LQLAB_VERSION) continue;
      if (j.at("method").get<std::string>() != method_name(method_)) continue;
      const cd v(j.at("re").get<double>(), j.at("im").get<double>());
      entries_[{j.at("q").get<u64>(), j.at("index").get<std::uint32_t>()}] =
          make_central_value(v, method_, j.at("est_error").get<double>());
    } catch (const json::exception&) {
      ++skipped_;
      log::warn("cache " + path_.string() + ": skipping corrupt line " + std::to_string(lineno));
    }
  }
}

std::optional<CentralValue> LValueCache::find(u64 q, std::uint32_t index) const {
  auto it = entries_.find({q, index});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void LValueCache::append(u64 q, std::uint32_t index, const CentralValue& cv) {
  json j;
  j["q"] = q;
  j["index"] = index;
  j["re"] = cv.value.real();
  j["im"] = cv.value.imag();
  j["est_error"] = cv.est_error;
  j["method"] = std::string(method_name(method_));
  j["version"] = LQLAB_VERSION;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::app);
  out << j.dump() << '\n';
  if (!out) throw ResourceError("cannot append to cache " + path_.string());
  entries_[{q, index}] = cv;
}

std::optional<std::filesystem::path> default_cache_path(const std::string& explicit_path, bool disabled) {
  if (disabled) return std::nullopt;
  if (!explicit_path.empty()) return std::filesystem::path(explicit_path);
  if (const char* dir = std::getenv("LQLAB_CACHE_DIR"); dir && *dir)
    return std::filesystem::path(dir) / "lvalues.jsonl";
  return std::nullopt;
}

CentralValueTable cached_central_values(const ContextPtr& ctx, EvalMethod method, LValueCache* cache,
                                        unsigned threads) {
  CentralValueTable table;
  table.ctx = ctx;
  table.characters = enumerate_class(ctx, CharacterClass::even_primitive);
  table.values.resize(table.characters.size());
  const u64 q = ctx->q();
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < table.characters.size(); ++i) {
    auto hit = cache ? cache->find(q, table.characters[i].index()) : std::nullopt;
    if (hit) table.values[i] = *hit;
    else missing.push_back(i);
  }
  if (missing.empty()) return table;
  // The whole table is recomputed so missing entries match a cold run bit for bit.
  auto full = method == EvalMethod::afe ? central_values_even_primitive(ctx) : central_values_hurwitz(ctx, threads);
  for (std::size_t i : missing) table.values[i] = full.values[i];
  if (cache)
    for (std::size_t i : missing) cache->append(q, table.characters[i].index(), table.values[i]);
  return table;
}

}  // namespace lq::cli
