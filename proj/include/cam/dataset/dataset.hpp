#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cam/filter/filter.hpp"
#include "cam/metrics/measure.hpp"
#include "cam/repo/source.hpp"

namespace cam::dataset {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest round-trip decimal form; integer columns print without a
/// decimal point and NaN prints as an empty string.
std::string format_value(double value, bool integer);

std::string csv_header();
/// Rows are sorted by (repo, path, class_name) before serialization.
std::string csv_text(std::vector<metrics::ClassRow> rows);
void write_csv(std::vector<metrics::ClassRow> rows, const std::filesystem::path& out);

/// Splits CSV text into records of fields (RFC 4180 quoting).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads rows written by csv_text; empty cells become NaN.
std::vector<metrics::ClassRow> read_rows(const std::string& text);

enum class RepoStatus { Pending, Ok, Failed };
std::string to_string(RepoStatus status);

struct RepoEntry {
  repo::RepoSpec spec;
  RepoStatus status = RepoStatus::Pending;
  std::string error;
  filter::FilterStats filter_stats;
  long long rows = 0;
  std::vector<std::string> dit_cycles;
  std::vector<std::string> skipped_files;
};

struct RunManifest {
  repo::DiscoveryCriteria criteria;
  std::vector<RepoEntry> repos;
  bool search_cap_exceeded = false;
  std::string started_at;
  std::string finished_at;
};

/// Canonical JSON: sorted keys, no insignificant whitespace.
nlohmann::json manifest_json(const RunManifest& manifest);
std::string manifest_text(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& out);

/// Human-readable column definitions and documented deviations.
std::string schema_markdown();

struct ArchiveEntry {
  std::string name;
  std::string data;
};

/// Deterministic zip: entries sorted by name, fixed 1980-01-01 timestamps,
/// deflate at a fixed level.
std::string zip_bytes(std::vector<ArchiveEntry> entries);
void write_zip(std::vector<ArchiveEntry> entries, const std::filesystem::path& out);

}  // namespace cam::dataset
