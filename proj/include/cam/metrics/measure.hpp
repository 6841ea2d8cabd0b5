#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cam/git/history.hpp"
#include "cam/java/parser.hpp"
#include "cam/metrics/schema.hpp"

namespace cam::metrics {

struct ClassRow {
  std::string repo;
  std::string path;
  std::string class_name;
  MetricVector values{};
};

bool row_less(const ClassRow& a, const ClassRow& b);

struct SourceFile {
  std::string path;
  std::string text;
  std::shared_ptr<const java::ParsedFile> parsed;
};

/// Rows for every top-level class of one file. Graph and history columns are
/// left NaN; measure_repo fills them.
std::vector<ClassRow> measure_file(const SourceFile& file, const std::string& repo);

void set_git_columns(MetricVector& values, const git::GitColumns& columns);

struct RepoMeasurement {
  std::vector<ClassRow> rows;  // sorted by (path, class_name)
  std::vector<std::string> dit_cycles;  // "path:Class" for classes on an inheritance cycle
  std::vector<std::string> skipped;     // files dropped because the history lookup failed
};

/// Returns the history columns of a path, or nullopt to drop the file.
using GitLookup = std::function<std::optional<git::GitColumns>(const std::string& path)>;

RepoMeasurement measure_repo(const std::vector<SourceFile>& files, const std::string& repo, const GitLookup& git,
                             std::size_t jobs = 1);

}  // namespace cam::metrics
