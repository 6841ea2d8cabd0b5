#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <sstream>

#include "cam/dataset/dataset.hpp"
#include "cam/util/files.hpp"

namespace cam::dataset {

namespace {

void append_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

}  // namespace

std::string format_value(double value, bool integer) {
  if (std::isnan(value)) return {};
  char buf[64];
  if (integer && std::fabs(value) < 9.0e15 && value == std::floor(value)) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(value));
    return std::string(buf, end);
  }
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string csv_header() {
  std::string out = "repo,path,class_name";
  for (const auto& c : metrics::columns()) {
    out += ',';
    out += c.name;
  }
  out += '\n';
  return out;
}

std::string csv_text(std::vector<metrics::ClassRow> rows) {
  std::sort(rows.begin(), rows.end(), metrics::row_less);
  std::string out = csv_header();
  const auto& cols = metrics::columns();
  for (const auto& row : rows) {
    append_field(out, row.repo);
    out += ',';
    append_field(out, row.path);
    out += ',';
    append_field(out, row.class_name);
    for (std::size_t i = 0; i < metrics::kMetricCount; ++i) {
      out += ',';
      out += format_value(row.values[i], cols[i].integer);
    }
    out += '\n';
  }
  return out;
}

void write_csv(std::vector<metrics::ClassRow> rows, const std::filesystem::path& out) {
  util::write_file_atomic(out, csv_text(std::move(rows)));
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields(1);
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    any = true;
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch == '\n') {
      records.push_back(std::move(fields));
      fields.assign(1, std::string());
      any = false;
    } else if (ch != '\r') {
      fields.back() += ch;
    }
  }
  if (any) records.push_back(std::move(fields));
  return records;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  auto records = parse_csv(line);
  return records.empty() ? std::vector<std::string>{std::string()} : records.front();
}

std::vector<metrics::ClassRow> read_rows(const std::string& text) {
  auto records = parse_csv(text);
  std::vector<metrics::ClassRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    if (f.size() != 3 + metrics::kMetricCount) {
      throw std::runtime_error("CSV record " + std::to_string(r) + " has " + std::to_string(f.size()) + " fields");
    }
    metrics::ClassRow row;
    row.repo = f[0];
    row.path = f[1];
    row.class_name = f[2];
    for (std::size_t i = 0; i < metrics::kMetricCount; ++i) {
      const auto& cell = f[3 + i];
      if (cell.empty()) {
        row.values[i] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      double v = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) throw std::runtime_error("bad number " + cell);
      row.values[i] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cam::dataset
