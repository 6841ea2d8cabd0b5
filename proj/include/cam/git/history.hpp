#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace cam::git {

struct FileHistory {
  std::string relative_path;
  long long commit_count = 0;
  long long author_count = 0;  // distinct lowercased author emails
  long long first_commit_time = 0;  // seconds since the epoch, UTC
  long long last_commit_time = 0;
  long long added_lines_total = 0;
  long long deleted_lines_total = 0;
};

class GitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UntrackedFile : public GitError {
 public:
  explicit UntrackedFile(const std::string& path) : GitError("untracked at pin: " + path) {}
};

/// History of one path reachable from `head_pin`, following renames.
FileHistory history_for(const std::filesystem::path& repo_dir, const std::string& relative_path,
                        const std::string& head_pin);

struct GitColumns {
  long long commits = 0;
  long long authors = 0;
  long long age_days = 0;
  long long churn_added = 0;
  long long churn_deleted = 0;
};

/// Age is last commit minus first commit, so the result depends only on the
/// pinned history.
GitColumns derived_columns(const FileHistory& history);

/// Runs git with `-C repo_dir` and returns stdout; throws GitError on a
/// non-zero exit.
std::string git_output(const std::filesystem::path& repo_dir, const std::vector<std::string>& args);

}  // namespace cam::git
