#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cam::repo {

struct DiscoveryCriteria {
  std::string language_tag = "java";
  long long min_stars = 1000;
  long long max_stars = 10000;
  long long min_size_kb = 200;
  long long max_repos = 1000;

  DiscoveryCriteria() = default;
  /// Throws std::invalid_argument unless min_stars < max_stars and max_repos >= 1.
  DiscoveryCriteria(std::string language, long long min_stars, long long max_stars, long long min_size_kb,
                    long long max_repos);

  void validate() const;
  /// Search qualifier string, e.g. "language:java stars:1000..10000 size:>=200".
  std::string query() const;
};

struct RepoSpec {
  std::string full_name;
  long long stars = 0;
  long long size_kb = 0;
  std::string default_branch;
  std::string head_commit;
  std::string discovered_at;
  std::string clone_url;

  std::string owner() const;
  std::string name() const;
  /// "owner__name", used for per-repo file names.
  std::string slug() const;
  /// Throws std::invalid_argument on a malformed name or pin.
  void validate() const;
};

bool is_commit_hash(const std::string& s);

struct HttpResponse {
  int status = 0;
  std::map<std::string, std::string> headers;  // keys lowercased
  std::string body;

  std::optional<std::string> header(const std::string& key) const;
};

/// Connection-level failure; retried with backoff.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RateLimited : public std::runtime_error {
 public:
  RateLimited(const std::string& what, long long retry_after) : std::runtime_error(what), retry_after_(retry_after) {}
  long long retry_after() const { return retry_after_; }

 private:
  long long retry_after_;
};

class DiscoveryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// `target` is a path plus query string relative to the API root.
  virtual HttpResponse get(const std::string& target) = 0;
};

/// Serves recorded responses from a directory holding index.json:
/// [{"target": ..., "status": 200, "headers": {...}, "body": "file"}].
/// Repeated entries for one target are served in order; the last one then
/// repeats.
class ReplayTransport : public Transport {
 public:
  explicit ReplayTransport(const std::filesystem::path& dir);
  HttpResponse get(const std::string& target) override;

 private:
  std::map<std::string, std::vector<HttpResponse>> responses_;
  std::map<std::string, std::size_t> served_;
};

/// Live HTTPS transport. The token, when present, is sent as a bearer
/// credential and never logged.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string base_url = "https://api.github.com", std::string token = {});
  HttpResponse get(const std::string& target) override;

 private:
  std::string base_url_;
  std::string token_;
};

struct DiscoverOptions {
  std::function<void(std::chrono::seconds)> sleep;
  std::function<long long()> now;  // epoch seconds
  bool reproducible = false;
  int max_rate_limit_retries = 5;
  int max_network_tries = 5;
};

struct DiscoveryResult {
  std::vector<RepoSpec> repos;
  bool search_cap_exceeded = false;
  std::vector<std::string> skipped;  // repos whose head commit could not be resolved
};

std::string search_target(const DiscoveryCriteria& criteria, int page);

DiscoveryResult discover(const DiscoveryCriteria& criteria, Transport& transport, DiscoverOptions options = {});

/// Sorts by stars descending then name ascending, drops duplicate names and
/// truncates to `limit`.
void order_repos(std::vector<RepoSpec>& repos, std::size_t limit);

class CloneFailed : public std::runtime_error {
 public:
  CloneFailed(std::string reason, const std::string& detail)
      : std::runtime_error(reason + ": " + detail), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

struct CloneResult {
  std::uintmax_t bytes_on_disk = 0;
  double wall_seconds = 0.0;
};

/// Full-history clone checked out at spec.head_commit. `dest` must be absent
/// or empty; a failed clone leaves nothing behind.
CloneResult clone(const RepoSpec& spec, const std::filesystem::path& dest);

std::filesystem::path clone_dir(const std::filesystem::path& workdir, const RepoSpec& spec);

}  // namespace cam::repo
