#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cam/java/parser.hpp"

namespace cam::filter {

enum class RejectReason { NotJavaExt, ForbiddenName, Undecodable, TooLongLine, TestFile, Unparseable };

std::string_view reason_code(RejectReason reason);
std::optional<RejectReason> reason_from_code(std::string_view code);

inline constexpr std::size_t kMaxLineLength = 1024;

struct ParseFailure {
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::string message;
};

struct FileRecord {
  std::string repo;
  std::string relative_path;
  std::size_t byte_size = 0;
  std::optional<std::string> content;  // set once the bytes decode
  std::optional<RejectReason> reject;
  std::string detail;
  std::optional<ParseFailure> parse_failure;
  std::shared_ptr<const java::ParsedFile> parsed;  // set for kept files

  bool kept() const { return !reject.has_value(); }
};

/// Counts per rejection code plus "kept".
struct FilterStats {
  std::map<std::string, long long> counts;

  void add(const FileRecord& record);
  void merge(const FilterStats& other);
  long long total() const;
  long long get(std::string_view key) const;
};

bool is_test_file(std::string_view relative_path, std::string_view source);

/// Applies the fixed rule order and stops at the first failing rule.
FileRecord filter_file(std::string_view relative_path, std::string_view bytes, std::string repo = {});

struct TreeResult {
  std::vector<FileRecord> records;  // sorted by relative path
  FilterStats stats;
};

/// Walks every regular file under root (skipping `.git` and symbolic links)
/// in lexicographic path order. Throws std::filesystem::filesystem_error if
/// the root cannot be read.
TreeResult filter_tree(const std::filesystem::path& root, const std::string& repo = {}, std::size_t jobs = 1);

}  // namespace cam::filter
