#include "cam/filter/filter.hpp"

#include <algorithm>
#include <array>

#include "cam/util/files.hpp"
#include "cam/util/parallel.hpp"
#include "cam/util/text.hpp"

namespace cam::filter {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 6> kCodes = {"not-java-ext", "forbidden-name", "undecodable",
                                                     "too-long-line", "test-file", "unparseable"};

std::string_view basename(std::string_view path) {
  const auto slash = path.rfind('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::string_view skip_space(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\f')) s.remove_prefix(1);
  return s;
}

bool imports_test_framework(std::string_view source) {
  std::size_t start = 0;
  while (start < source.size()) {
    auto nl = source.find('\n', start);
    if (nl == std::string_view::npos) nl = source.size();
    auto line = skip_space(source.substr(start, nl - start));
    start = nl + 1;
    if (!starts_with(line, "import")) continue;
    line.remove_prefix(6);
    if (line.empty() || (line.front() != ' ' && line.front() != '\t')) continue;
    line = skip_space(line);
    if (starts_with(line, "static") && line.size() > 6 && (line[6] == ' ' || line[6] == '\t')) {
      line = skip_space(line.substr(6));
    }
    for (std::string_view prefix : {"org.junit", "junit.framework", "org.testng"}) {
      if (starts_with(line, prefix)) return true;
    }
  }
  return false;
}

}  // namespace

std::string_view reason_code(RejectReason reason) { return kCodes[static_cast<std::size_t>(reason)]; }

std::optional<RejectReason> reason_from_code(std::string_view code) {
  for (std::size_t i = 0; i < kCodes.size(); ++i) {
    if (kCodes[i] == code) return static_cast<RejectReason>(i);
  }
  return std::nullopt;
}

void FilterStats::add(const FileRecord& record) {
  ++counts[record.kept() ? std::string("kept") : std::string(reason_code(*record.reject))];
}

void FilterStats::merge(const FilterStats& other) {
  for (const auto& [k, v] : other.counts) counts[k] += v;
}

long long FilterStats::total() const {
  long long n = 0;
  for (const auto& [k, v] : counts) n += v;
  return n;
}

long long FilterStats::get(std::string_view key) const {
  auto it = counts.find(std::string(key));
  return it == counts.end() ? 0 : it->second;
}

bool is_test_file(std::string_view relative_path, std::string_view source) {
  std::size_t start = 0;
  while (true) {
    const auto slash = relative_path.find('/', start);
    if (slash == std::string_view::npos) break;
    const auto segment = util::to_lower(relative_path.substr(start, slash - start));
    if (segment == "test" || segment == "tests" || segment == "testfixtures") return true;
    start = slash + 1;
  }
  const auto name = basename(relative_path);
  if (name.size() >= 9 && starts_with(name, "Test") && name.substr(name.size() - 5) == ".java") return true;
  for (std::string_view suffix : {"Test.java", "Tests.java", "TestCase.java"}) {
    if (name.size() >= suffix.size() && name.substr(name.size() - suffix.size()) == suffix) return true;
  }
  return imports_test_framework(source);
}

FileRecord filter_file(std::string_view relative_path, std::string_view bytes, std::string repo) {
  FileRecord r;
  r.repo = std::move(repo);
  r.relative_path = std::string(relative_path);
  r.byte_size = bytes.size();
  const auto name = basename(relative_path);
  if (name.size() <= 5 || name.substr(name.size() - 5) != ".java") {
    r.reject = RejectReason::NotJavaExt;
    return r;
  }
  if (name == "package-info.java" || name == "module-info.java") {
    r.reject = RejectReason::ForbiddenName;
    r.detail = std::string(name);
    return r;
  }
  if (!util::valid_utf8(bytes)) {
    r.reject = RejectReason::Undecodable;
    return r;
  }
  r.content = std::string(bytes);
  if (const auto longest = util::longest_line(bytes); longest > kMaxLineLength) {
    r.reject = RejectReason::TooLongLine;
    r.detail = std::to_string(longest);
    return r;
  }
  if (is_test_file(relative_path, bytes)) {
    r.reject = RejectReason::TestFile;
    return r;
  }
  try {
    r.parsed = std::make_shared<const java::ParsedFile>(java::parse_file(bytes));
  } catch (const java::LexError& e) {
    r.reject = RejectReason::Unparseable;
    r.parse_failure = ParseFailure{e.line(), e.column(), e.what()};
    r.detail = e.what();
  } catch (const java::SyntaxError& e) {
    r.reject = RejectReason::Unparseable;
    r.parse_failure = ParseFailure{e.line(), e.column(), e.what()};
    r.detail = e.what();
  }
  return r;
}

TreeResult filter_tree(const fs::path& root, const std::string& repo, std::size_t jobs) {
  if (!fs::is_directory(root)) {
    throw fs::filesystem_error("not a directory", root, std::make_error_code(std::errc::not_a_directory));
  }
  std::vector<std::string> paths;
  for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator(); ++it) {
    const auto& entry = *it;
    if (entry.is_symlink()) {
      if (entry.is_directory()) it.disable_recursion_pending();
      continue;
    }
    if (entry.is_directory()) {
      if (entry.path().filename() == ".git") it.disable_recursion_pending();
      continue;
    }
    if (!entry.is_regular_file()) continue;
    paths.push_back(fs::relative(entry.path(), root).generic_string());
  }
  std::sort(paths.begin(), paths.end());

  TreeResult result;
  result.records.resize(paths.size());
  util::parallel_for(paths.size(), jobs, [&](std::size_t i) {
    const auto& rel = paths[i];
    if (!(rel.size() > 5 && rel.substr(rel.size() - 5) == ".java")) {
      FileRecord r = filter_file(rel, {}, repo);
      r.byte_size = static_cast<std::size_t>(fs::file_size(root / rel));
      result.records[i] = std::move(r);
      return;
    }
    result.records[i] = filter_file(rel, util::read_file(root / rel), repo);
  });
  for (const auto& r : result.records) result.stats.add(r);
  return result;
}

}  // namespace cam::filter
