#include "lqlab/cli/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace lq::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(c));
  return buf;
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t) {
  // numbers go through format_cell so both formats carry the same digits
  out << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << "  {";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << (i ? ", " : "") << nlohmann::json(t.columns[i]).dump() << ": ";
      const Cell& c = t.rows[r][i];
      if (const auto* s = std::get_if<std::string>(&c)) out << nlohmann::json(*s).dump();
      else if (const auto* d = std::get_if<double>(&c); d && !std::isfinite(*d)) out << "null";
      else out << format_cell(c);
    }
    out << (r + 1 < t.rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
}

void export_table(const Table& t, const std::string& path, const std::string& format) {
  if (t.rows.empty()) throw std::logic_error("nothing to export");
  if (format != "csv" && format != "json") throw std::invalid_argument("unknown export format " + format);
  auto emit = [&](std::ostream& os) {
    if (format == "json") write_json(os, t);
    else write_csv(os, t);
  };
  if (path.empty()) {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  emit(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace lq::cli
