#pragma once

// Flat-file number rendering shared by every CLI output: %.12e scientific,
// '.' decimal point regardless of locale, newline-terminated rows.

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ladm/errors.hpp"

namespace ladm::csv {

[[nodiscard]] inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 12);
  return std::string(buf, res.ptr);
}

[[nodiscard]] inline double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw precondition_error("not a number: '" + std::string(s) + "'");
  }
  return v;
}

[[nodiscard]] inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

[[nodiscard]] inline std::string render(const table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

[[nodiscard]] inline table parse(std::string_view text) {
  table t;
  bool first = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (first) {
      for (auto f : fields) t.header.emplace_back(f);
      first = false;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw precondition_error("row has " + std::to_string(fields.size()) + " fields, header has " +
                               std::to_string(t.header.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_number(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace ladm::csv
