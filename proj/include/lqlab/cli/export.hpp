#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace lq::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);  // throws std::logic_error on a width mismatch
};

// Doubles at 17 significant digits.
std::string format_cell(const Cell& c);
void write_csv(std::ostream& out, const Table& t);
void write_json(std::ostream& out, const Table& t);
// Writes to `path`, or stdout when empty; format is "csv" or "json". IO errors throw.
void export_table(const Table& t, const std::string& path, const std::string& format);

}  // namespace lq::cli
