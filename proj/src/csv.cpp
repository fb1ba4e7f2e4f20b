#include "ppscat/csv.hpp"

#include "json.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace ppscat::io {

namespace {

std::string sanitize_meta(std::string_view text)
{
  std::string out(text);
  for (char& ch : out) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      ch = '_';
    }
  }
  return out;
}

std::string render(const Cell& cell)
{
  if (const auto* d = std::get_if<double>(&cell)) {
    return format_double(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    return std::to_string(*i);
  }
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\n\"") != std::string::npos) {
    throw std::invalid_argument("CSV text cells may not contain ',', '\"' or newlines");
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

Cell parse_cell(std::string_view text)
{
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec == std::errc() && ptr == end && !text.empty()) {
    return value;
  }
  return std::string(text);
}

}  // namespace

std::string format_double(double value)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                       std::chars_format::general, 17);
  if (ec != std::errc()) {
    throw std::runtime_error("failed to format double");
  }
  return {buf, ptr};
}

std::string emit_csv(const Table& table)
{
  std::string out = "# meta:";
  for (const auto& [key, value] : table.meta) {
    out += ' ';
    out += sanitize_meta(key);
    out += '=';
    out += sanitize_meta(value);
  }
  out += '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("row width does not match the CSV header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += render(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(std::string_view text)
{
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) {
    lines.pop_back();
  }
  if (lines.size() < 2) {
    throw std::invalid_argument("CSV needs a meta line and a header line");
  }
  constexpr std::string_view prefix = "# meta:";
  if (!lines[0].starts_with(prefix)) {
    throw std::invalid_argument("CSV does not start with a meta line");
  }

  Table table;
  for (std::string_view item : split(lines[0].substr(prefix.size()), ' ')) {
    if (item.empty()) {
      continue;
    }
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("malformed meta entry '" + std::string(item) + "'");
    }
    table.meta.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  for (std::string_view col : split(lines[1], ',')) {
    table.columns.emplace_back(col);
  }
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::vector<Cell> row;
    for (std::string_view cell : split(lines[i], ',')) {
      row.push_back(parse_cell(cell));
    }
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("CSV row " + std::to_string(i + 1) + " has the wrong width");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string emit_json(const Table& table)
{
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) {
    doc["meta"][key] = value;
  }
  doc["columns"] = table.columns;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("row width does not match the column list");
    }
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { record[table.columns[i]] = v; }, row[i]);
    }
    doc["records"].push_back(std::move(record));
  }
  return doc.dump(2) + "\n";
}

}  // namespace ppscat::io
