#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "suds/error.hpp"
#include "suds/sample.hpp"

namespace suds {

/// A labeled stream read from disk, in file order.
struct Dataset {
  std::vector<Sample> samples;
  std::vector<std::string> class_names;
  std::size_t dim = 0;
};

struct CsvOptions {
  bool header = false;
  char delimiter = ',';
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

// Splits on the delimiter, honouring single and double quotes.
inline std::vector<std::string> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  std::string cur;
  char quote = 0;
  for (char ch : line) {
    if (quote) {
      cur += ch;
      if (ch == quote) quote = 0;
    } else if (ch == '\'' || ch == '"') {
      quote = ch;
      cur += ch;
    } else if (ch == delimiter) {
      out.push_back(unquote(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(unquote(cur));
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace detail

// Numeric feature columns, label in the last column (any token). Class ids
// are assigned in first-seen order. Row numbers in errors are 1-based lines.
inline Dataset load_csv(std::istream& in, const CsvOptions& options = {}) {
  Dataset ds;
  std::map<std::string, ClassId> ids;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool header_pending = options.header;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_fields(line, options.delimiter);
    if (header_pending) {
      header_pending = false;
      columns = fields.size();
      continue;
    }
    if (columns == 0) columns = fields.size();
    if (fields.size() != columns) {
      throw ParseError("csv row " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                       " columns, found " + std::to_string(fields.size()));
    }
    if (columns < 2) throw ParseError("csv row " + std::to_string(line_no) + ": need at least one feature and a label");
    Vector x(columns - 1);
    for (std::size_t c = 0; c + 1 < columns; ++c) {
      if (!detail::parse_double(fields[c], x[c])) {
        throw ParseError("csv row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                         ": non-numeric feature '" + fields[c] + "'");
      }
    }
    const std::string& token = fields.back();
    if (detail::trim(token).empty()) throw ParseError("csv row " + std::to_string(line_no) + ": missing label");
    auto [it, inserted] = ids.emplace(token, static_cast<ClassId>(ds.class_names.size()));
    if (inserted) ds.class_names.push_back(token);
    ds.samples.emplace_back(std::move(x), ds.samples.size(), it->second);
  }
  if (ds.samples.empty()) throw ParseError("csv: no data rows");
  ds.dim = columns - 1;
  return ds;
}

inline Dataset load_csv(const std::string& path, const CsvOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("csv: cannot open '" + path + "'");
  return load_csv(in, options);
}

// ARFF subset: numeric (numeric/real/integer) and nominal attributes, dense
// @data rows, '%' comments. Nominal features are one-hot encoded; the last
// attribute is the class and must be nominal (ids follow declaration order).
inline Dataset load_arff(std::istream& in) {
  struct Attribute {
    std::string name;
    bool nominal = false;
    std::vector<std::string> values;
  };
  std::vector<Attribute> attrs;
  std::string line;
  std::size_t line_no = 0;
  bool in_data = false;
  Dataset ds;

  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  auto fail = [&](const std::string& what) { throw ParseError("arff line " + std::to_string(line_no) + ": " + what); };

  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    std::string_view view = detail::trim(line);
    if (view.empty() || view.front() == '%') continue;

    if (!in_data) {
      if (view.front() != '@') fail("expected a header declaration");
      std::istringstream decl{std::string(view)};
      std::string keyword;
      decl >> keyword;
      keyword = lower(keyword);
      if (keyword == "@relation") continue;
      if (keyword == "@data") {
        if (attrs.size() < 2) fail("need at least one feature and a class attribute");
        if (!attrs.back().nominal) fail("class attribute '" + attrs.back().name + "' must be nominal");
        for (std::size_t a = 0; a + 1 < attrs.size(); ++a) ds.dim += attrs[a].nominal ? attrs[a].values.size() : 1;
        ds.class_names = attrs.back().values;
        in_data = true;
        continue;
      }
      if (keyword != "@attribute") fail("unknown declaration '" + keyword + "'");
      std::string rest;
      std::getline(decl, rest);
      std::string_view r = detail::trim(rest);
      Attribute attr;
      if (r.empty()) fail("malformed @attribute");
      std::size_t name_end;
      if (r.front() == '\'' || r.front() == '"') {
        name_end = r.find(r.front(), 1);
        if (name_end == std::string_view::npos) fail("unterminated attribute name");
        attr.name = std::string(r.substr(1, name_end - 1));
        ++name_end;
      } else {
        name_end = r.find_first_of(" \t{");
        if (name_end == std::string_view::npos) fail("attribute '" + std::string(r) + "' has no type");
        attr.name = std::string(r.substr(0, name_end));
      }
      std::string_view type = detail::trim(r.substr(name_end));
      if (type.empty()) fail("attribute '" + attr.name + "' has no type");
      if (type.front() == '{') {
        const auto close = type.find('}');
        if (close == std::string_view::npos) fail("unterminated nominal value list");
        attr.nominal = true;
        for (auto& v : detail::split_fields(type.substr(1, close - 1), ',')) attr.values.push_back(v);
        if (attr.values.empty()) fail("empty nominal value list");
      } else {
        const std::string t = lower(std::string(type));
        if (t != "numeric" && t != "real" && t != "integer") {
          fail("unsupported attribute type '" + std::string(type) + "' for '" + attr.name + "'");
        }
      }
      attrs.push_back(std::move(attr));
      continue;
    }

    if (view.front() == '{') fail("sparse ARFF rows are not supported");
    auto fields = detail::split_fields(view, ',');
    if (fields.size() != attrs.size()) {
      fail("expected " + std::to_string(attrs.size()) + " values, found " + std::to_string(fields.size()));
    }
    Vector x;
    x.reserve(ds.dim);
    for (std::size_t a = 0; a + 1 < attrs.size(); ++a) {
      if (fields[a] == "?") fail("missing values are not supported");
      if (attrs[a].nominal) {
        const auto& vals = attrs[a].values;
        const auto it = std::find(vals.begin(), vals.end(), fields[a]);
        if (it == vals.end()) fail("value '" + fields[a] + "' not declared for '" + attrs[a].name + "'");
        for (std::size_t k = 0; k < vals.size(); ++k) x.push_back(vals.begin() + static_cast<std::ptrdiff_t>(k) == it ? 1.0 : 0.0);
      } else {
        double v;
        if (!detail::parse_double(fields[a], v)) fail("non-numeric value '" + fields[a] + "' for '" + attrs[a].name + "'");
        x.push_back(v);
      }
    }
    const auto& classes = attrs.back().values;
    const auto it = std::find(classes.begin(), classes.end(), fields.back());
    if (it == classes.end()) fail("undeclared class '" + fields.back() + "'");
    ds.samples.emplace_back(std::move(x), ds.samples.size(), static_cast<ClassId>(it - classes.begin()));
  }
  if (!in_data) throw ParseError("arff: missing @data section");
  if (ds.samples.empty()) throw ParseError("arff: no data rows");
  return ds;
}

inline Dataset load_arff(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("arff: cannot open '" + path + "'");
  return load_arff(in);
}

// Dispatch on extension: .arff -> ARFF, anything else -> CSV.
inline Dataset load_dataset(const std::string& path, const CsvOptions& csv = {}) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == "arff") return load_arff(path);
  }
  return load_csv(path, csv);
}

}  // namespace suds
