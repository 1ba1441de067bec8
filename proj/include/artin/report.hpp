#pragma once

// Tabular reports and their CSV / JSON / text renderings.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace artin {

using Value = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;
using Field = std::pair<std::string, Value>;

struct Report {
  std::string command;
  std::vector<Field> config;    // reproducibility inputs (thread count excluded)
  std::vector<Field> summary;   // one-row result
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;  // optional per-item table
  std::vector<std::string> notes;
  std::vector<std::string> findings;     // empirical violations of stated claims

  void add(std::string key, Value v) { summary.emplace_back(std::move(key), std::move(v)); }
};

enum class Format { csv, json, table };

namespace detail {

inline std::string format_double(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline std::string to_text(const Value& v, int digits) {
  return std::visit(
      [digits](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(x, digits);
        } else {
          return std::to_string(x);
        }
      },
      v);
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline nlohmann::ordered_json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return nullptr;
        }
        return x;
      },
      v);
}

inline nlohmann::ordered_json fields_json(const std::vector<Field>& fs) {
  auto obj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fs) obj[k] = to_json(v);
  return obj;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) os << ',';
    os << csv_quote(cells[i]);
  }
  os << "\r\n";
}

}  // namespace detail

inline constexpr const char* kVersion =
#ifdef ARTIN_VERSION
    ARTIN_VERSION;
#else
    "0.0.0";
#endif

/// CSV: '#' metadata lines, then the table (or the summary as a single row).
/// Doubles carry 17 significant digits.
inline void write_csv(std::ostream& os, const Report& r) {
  os << "# command=" << r.command << " version=" << kVersion << "\r\n";
  for (const auto& [k, v] : r.config) os << "# config." << k << '=' << detail::to_text(v, 17) << "\r\n";
  for (const auto& n : r.notes) os << "# note: " << n << "\r\n";
  for (const auto& f : r.findings) os << "# finding: " << f << "\r\n";
  if (!r.columns.empty()) {
    for (const auto& [k, v] : r.summary) os << "# summary." << k << '=' << detail::to_text(v, 17) << "\r\n";
    detail::write_csv_row(os, r.columns);
    for (const auto& row : r.rows) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(detail::to_text(v, 17));
      detail::write_csv_row(os, cells);
    }
    return;
  }
  std::vector<std::string> head, cells;
  for (const auto& [k, v] : r.summary) {
    head.push_back(k);
    cells.push_back(detail::to_text(v, 17));
  }
  detail::write_csv_row(os, head);
  detail::write_csv_row(os, cells);
}

/// JSON: one object; summary fields first, then rows, config and metadata.
inline void write_json(std::ostream& os, const Report& r) {
  auto obj = detail::fields_json(r.summary);
  if (!r.columns.empty()) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      auto o = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < r.columns.size() && i < row.size(); ++i) o[r.columns[i]] = detail::to_json(row[i]);
      rows.push_back(std::move(o));
    }
    obj["rows"] = std::move(rows);
  }
  obj["command"] = r.command;
  obj["version"] = kVersion;
  obj["config"] = detail::fields_json(r.config);
  if (!r.notes.empty()) obj["notes"] = r.notes;
  obj["findings"] = r.findings;
  os << obj.dump() << '\n';
}

inline void write_table(std::ostream& os, const Report& r) {
  os << r.command << " (version " << kVersion << ")\n";
  for (const auto& [k, v] : r.config) os << "  config " << k << " = " << detail::to_text(v, 12) << '\n';
  std::size_t width = 0;
  for (const auto& [k, v] : r.summary) width = std::max(width, k.size());
  for (const auto& [k, v] : r.summary) {
    os << "  " << k << std::string(width - k.size(), ' ') << " : " << detail::to_text(v, 12) << '\n';
  }
  if (!r.columns.empty()) {
    std::vector<std::size_t> w(r.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t i = 0; i < r.columns.size(); ++i) w[i] = r.columns[i].size();
    for (const auto& row : r.rows) {
      auto& t = text.emplace_back();
      for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) {
        t.push_back(detail::to_text(row[i], 10));
        w[i] = std::max(w[i], t.back().size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      os << ' ';
      for (std::size_t i = 0; i < cells.size(); ++i) os << ' ' << std::string(w[i] - cells[i].size(), ' ') << cells[i];
      os << '\n';
    };
    line(r.columns);
    for (const auto& t : text) line(t);
  }
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  for (const auto& f : r.findings) os << "  FINDING: " << f << '\n';
}

inline void write_report(std::ostream& os, const Report& r, Format f) {
  switch (f) {
    case Format::csv:
      write_csv(os, r);
      break;
    case Format::json:
      write_json(os, r);
      break;
    case Format::table:
      write_table(os, r);
      break;
  }
}

}  // namespace artin
