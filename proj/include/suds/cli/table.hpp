#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "suds/cli/config.hpp"

namespace suds::cli {

inline std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

inline std::string compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Header + rows rendered as TSV or a markdown table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render(OutputFormat format) const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
      if (format == OutputFormat::md) out << "| ";
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << (format == OutputFormat::md ? " | " : "\t");
        out << cells[i];
      }
      if (format == OutputFormat::md) out << " |";
      out << '\n';
    };
    line(columns);
    if (format == OutputFormat::md) line(std::vector<std::string>(columns.size(), "---"));
    for (const auto& r : rows) line(r);
    return out.str();
  }
};

}  // namespace suds::cli
