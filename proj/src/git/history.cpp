#include "cam/git/history.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "cam/util/process.hpp"
#include "cam/util/text.hpp"

namespace cam::git {

namespace {

long long to_number(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw GitError("unexpected git output: " + std::string(s));
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string git_output(const std::filesystem::path& repo_dir, const std::vector<std::string>& args) {
  std::vector<std::string> argv = {"git", "-C", repo_dir.string(), "-c", "core.quotePath=false"};
  argv.insert(argv.end(), args.begin(), args.end());
  auto result = util::run_process(argv);
  if (result.exit_code != 0) {
    std::string msg = result.err;
    while (!msg.empty() && (msg.back() == '\n' || msg.back() == '\r')) msg.pop_back();
    throw GitError("git " + (args.empty() ? std::string() : args.front()) + " failed: " + msg);
  }
  return std::move(result.out);
}

FileHistory history_for(const std::filesystem::path& repo_dir, const std::string& relative_path,
                        const std::string& head_pin) {
  const auto listed = git_output(repo_dir, {"ls-tree", "--name-only", head_pin, "--", relative_path});
  if (listed.empty()) throw UntrackedFile(relative_path);

  const auto log = git_output(repo_dir, {"log", "--follow", "-M", "--numstat", "--no-color", "--no-textconv",
                                         "--no-ext-diff", "--format=%x1e%H%x1f%ae%x1f%at", head_pin, "--",
                                         relative_path});
  FileHistory h;
  h.relative_path = relative_path;
  std::set<std::string> authors;
  bool first = true;
  for (auto record : split(log, '\x1e')) {
    if (record.empty()) continue;
    const auto lines = split(record, '\n');
    const auto header = split(lines.at(0), '\x1f');
    if (header.size() != 3) throw GitError("unexpected git log header");
    authors.insert(util::to_lower(header[1]));
    const long long when = to_number(header[2]);
    if (first) {
      h.first_commit_time = h.last_commit_time = when;
      first = false;
    }
    h.first_commit_time = std::min(h.first_commit_time, when);
    h.last_commit_time = std::max(h.last_commit_time, when);
    ++h.commit_count;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto cols = split(lines[i], '\t');
      if (cols.size() < 3) continue;
      if (cols[0] == "-" || cols[1] == "-") continue;  // binary diff
      h.added_lines_total += to_number(cols[0]);
      h.deleted_lines_total += to_number(cols[1]);
    }
  }
  if (h.commit_count == 0) throw UntrackedFile(relative_path);
  h.author_count = static_cast<long long>(authors.size());
  return h;
}

GitColumns derived_columns(const FileHistory& history) {
  GitColumns c;
  c.commits = history.commit_count;
  c.authors = history.author_count;
  const long long span = history.last_commit_time - history.first_commit_time;
  c.age_days = span >= 0 ? span / 86400 : 0;
  c.churn_added = history.added_lines_total;
  c.churn_deleted = history.deleted_lines_total;
  return c;
}

}  // namespace cam::git
