#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "schur/errors.hpp"

namespace schur::bench::csv {

// Shortest representation that parses back to the same double.
inline std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse(const std::string& field, const char* column) {
  T value{};
  const auto r = std::from_chars(field.data(), field.data() + field.size(), value);
  if (r.ec != std::errc() || r.ptr != field.data() + field.size())
    throw IoError(std::string("csv: bad value '") + field + "' in column " + column);
  return value;
}

/// Data lines of a CSV stream after checking the header; '#' lines are skipped.
inline std::vector<std::vector<std::string>> read_table(std::istream& in, const std::string& header) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool seen_header = false;
  const auto width = split(header).size();
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) throw IoError("csv: unexpected header '" + line + "'");
      seen_header = true;
      continue;
    }
    auto fields = split(line);
    if (fields.size() != width)
      throw IoError("csv: expected " + std::to_string(width) + " fields, got " + std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }
  if (!seen_header) throw IoError("csv: missing header");
  return rows;
}

}  // namespace schur::bench::csv
