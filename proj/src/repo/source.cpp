#include "cam/repo/source.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <thread>

#include <json.hpp>

#include "cam/git/history.hpp"
#include "cam/util/files.hpp"
#include "cam/util/process.hpp"
#include "cam/util/text.hpp"

namespace cam::repo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kPerPage = 100;

std::string url_encode(const std::string& s, bool space_as_plus) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char ch : s) {
    if (std::isalnum(ch) || ch == '-' || ch == '_' || ch == '.' || ch == '~') {
      out.push_back(static_cast<char>(ch));
    } else if (ch == ' ' && space_as_plus) {
      out.push_back('+');
    } else {
      out.push_back('%');
      out.push_back(kHex[ch >> 4]);
      out.push_back(kHex[ch & 0xF]);
    }
  }
  return out;
}

long long epoch_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
}

bool is_rate_limited(const HttpResponse& r) {
  if (r.status == 429) return true;
  if (r.status != 403) return false;
  return r.header("retry-after").has_value() || r.header("x-ratelimit-remaining") == std::optional<std::string>("0");
}

class Requester {
 public:
  Requester(Transport& transport, DiscoverOptions& options) : transport_(transport), options_(options) {}

  HttpResponse get(const std::string& target) {
    int rate_retries = 0;
    int network_tries = 0;
    long long backoff = 1;
    while (true) {
      HttpResponse r;
      try {
        r = transport_.get(target);
      } catch (const NetworkError& e) {
        if (++network_tries >= options_.max_network_tries) throw;
        options_.sleep(std::chrono::seconds(backoff));
        backoff *= 2;
        continue;
      }
      if (r.status >= 500) {
        if (++network_tries >= options_.max_network_tries) {
          throw NetworkError("server error " + std::to_string(r.status) + " for " + target);
        }
        options_.sleep(std::chrono::seconds(backoff));
        backoff *= 2;
        continue;
      }
      if (is_rate_limited(r)) {
        const long long wait = retry_after(r);
        if (rate_retries++ >= options_.max_rate_limit_retries) {
          throw RateLimited("rate limit persisted for " + target, wait);
        }
        options_.sleep(std::chrono::seconds(wait));
        continue;
      }
      return r;
    }
  }

 private:
  long long retry_after(const HttpResponse& r) const {
    if (auto v = r.header("retry-after")) {
      try {
        return std::max(0LL, std::stoll(*v));
      } catch (const std::exception&) {
      }
    }
    if (auto v = r.header("x-ratelimit-reset")) {
      try {
        return std::max(1LL, std::stoll(*v) - options_.now());
      } catch (const std::exception&) {
      }
    }
    return 60;
  }

  Transport& transport_;
  DiscoverOptions& options_;
};

json parse_json(const HttpResponse& r, const std::string& target) {
  try {
    return json::parse(r.body);
  } catch (const json::parse_error& e) {
    throw DiscoveryError("malformed JSON from " + target + ": " + e.what());
  }
}

std::uintmax_t tree_bytes(const fs::path& dir) {
  std::uintmax_t total = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && !e.is_symlink()) total += e.file_size();
  }
  return total;
}

}  // namespace

DiscoveryCriteria::DiscoveryCriteria(std::string language, long long min_stars_, long long max_stars_,
                                     long long min_size_kb_, long long max_repos_)
    : language_tag(std::move(language)),
      min_stars(min_stars_),
      max_stars(max_stars_),
      min_size_kb(min_size_kb_),
      max_repos(max_repos_) {
  validate();
}

void DiscoveryCriteria::validate() const {
  if (language_tag.empty()) throw std::invalid_argument("language tag must not be empty");
  if (min_stars >= max_stars) throw std::invalid_argument("min_stars must be below max_stars");
  if (max_repos < 1) throw std::invalid_argument("max_repos must be at least 1");
  if (min_size_kb < 0 || min_stars < 0) throw std::invalid_argument("criteria must be non-negative");
}

std::string DiscoveryCriteria::query() const {
  return "language:" + language_tag + " stars:" + std::to_string(min_stars) + ".." + std::to_string(max_stars) +
         " size:>=" + std::to_string(min_size_kb);
}

std::string RepoSpec::owner() const { return full_name.substr(0, full_name.find('/')); }

std::string RepoSpec::name() const { return full_name.substr(full_name.find('/') + 1); }

std::string RepoSpec::slug() const { return owner() + "__" + name(); }

bool is_commit_hash(const std::string& s) {
  return s.size() == 40 &&
         std::all_of(s.begin(), s.end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

void RepoSpec::validate() const {
  if (std::count(full_name.begin(), full_name.end(), '/') != 1 || full_name.front() == '/' ||
      full_name.back() == '/') {
    throw std::invalid_argument("repository name must be owner/name: " + full_name);
  }
  for (const auto& part : {owner(), name()}) {
    if (part == "." || part == "..") {
      throw std::invalid_argument("unsupported repository name: " + full_name);
    }
  }
  if (!is_commit_hash(head_commit)) throw std::invalid_argument("head commit is not a 40-hex hash: " + head_commit);
}

std::optional<std::string> HttpResponse::header(const std::string& key) const {
  auto it = headers.find(util::to_lower(key));
  if (it == headers.end()) return std::nullopt;
  return it->second;
}

ReplayTransport::ReplayTransport(const fs::path& dir) {
  const auto index = json::parse(util::read_file(dir / "index.json"));
  for (const auto& entry : index) {
    HttpResponse r;
    r.status = entry.value("status", 200);
    if (entry.contains("headers")) {
      for (const auto& [k, v] : entry["headers"].items()) r.headers[util::to_lower(k)] = v.get<std::string>();
    }
    if (entry.contains("body")) r.body = util::read_file(dir / entry["body"].get<std::string>());
    responses_[entry.at("target").get<std::string>()].push_back(std::move(r));
  }
}

HttpResponse ReplayTransport::get(const std::string& target) {
  auto it = responses_.find(target);
  if (it == responses_.end()) {
    HttpResponse missing;
    missing.status = 404;
    missing.body = R"({"message":"Not Found"})";
    return missing;
  }
  auto& n = served_[target];
  const auto& r = it->second[std::min(n, it->second.size() - 1)];
  ++n;
  return r;
}

std::string search_target(const DiscoveryCriteria& criteria, int page) {
  return "/search/repositories?q=" + url_encode(criteria.query(), true) +
         "&sort=stars&order=desc&per_page=" + std::to_string(kPerPage) + "&page=" + std::to_string(page);
}

void order_repos(std::vector<RepoSpec>& repos, std::size_t limit) {
  std::stable_sort(repos.begin(), repos.end(), [](const RepoSpec& a, const RepoSpec& b) {
    if (a.stars != b.stars) return a.stars > b.stars;
    return a.full_name < b.full_name;
  });
  std::set<std::string> seen;
  std::vector<RepoSpec> unique;
  for (auto& r : repos) {
    if (seen.insert(r.full_name).second) unique.push_back(std::move(r));
  }
  if (unique.size() > limit) unique.resize(limit);
  repos = std::move(unique);
}

DiscoveryResult discover(const DiscoveryCriteria& criteria, Transport& transport, DiscoverOptions options) {
  criteria.validate();
  if (!options.sleep) options.sleep = [](std::chrono::seconds s) { std::this_thread::sleep_for(s); };
  if (!options.now) options.now = epoch_now;
  Requester requester(transport, options);

  DiscoveryResult result;
  std::vector<RepoSpec> found;
  std::optional<long long> stamp;
  for (int page = 1;; ++page) {
    const auto target = search_target(criteria, page);
    const auto r = requester.get(target);
    if (r.status == 422) {
      result.search_cap_exceeded = true;
      break;
    }
    if (r.status != 200) throw DiscoveryError("search failed with status " + std::to_string(r.status));
    if (!stamp) {
      if (auto date = r.header("date")) stamp = util::parse_http_date(*date);
    }
    const auto body = parse_json(r, target);
    const auto& items = body.at("items");
    for (const auto& item : items) {
      RepoSpec spec;
      spec.full_name = item.at("full_name").get<std::string>();
      spec.stars = item.value("stargazers_count", 0LL);
      spec.size_kb = item.value("size", 0LL);
      spec.default_branch = item.value("default_branch", std::string("main"));
      spec.clone_url = item.value("clone_url", "https://github.com/" + spec.full_name + ".git");
      found.push_back(std::move(spec));
    }
    const long long total = body.value("total_count", 0LL);
    const auto seen = static_cast<long long>(page) * kPerPage;
    if (items.size() < static_cast<std::size_t>(kPerPage) || seen >= total) break;
    if (static_cast<long long>(found.size()) >= criteria.max_repos) break;
  }
  if (!stamp) stamp = options.reproducible ? 0 : options.now();
  order_repos(found, static_cast<std::size_t>(criteria.max_repos));

  for (auto& spec : found) {
    const auto target = "/repos/" + spec.full_name + "/commits/" + url_encode(spec.default_branch, false);
    const auto r = requester.get(target);
    if (r.status != 200) {
      result.skipped.push_back(spec.full_name);
      continue;
    }
    spec.head_commit = util::to_lower(parse_json(r, target).value("sha", std::string()));
    spec.discovered_at = util::format_utc(*stamp);
    try {
      spec.validate();
    } catch (const std::invalid_argument&) {
      result.skipped.push_back(spec.full_name);
      continue;
    }
    result.repos.push_back(std::move(spec));
  }
  return result;
}

fs::path clone_dir(const fs::path& workdir, const RepoSpec& spec) {
  return workdir / "github" / spec.owner() / spec.name();
}

CloneResult clone(const RepoSpec& spec, const fs::path& dest) {
  const auto start = std::chrono::steady_clock::now();
  if (fs::exists(dest) && !(fs::is_directory(dest) && fs::is_empty(dest))) {
    throw CloneFailed("dest-not-empty", dest.string());
  }
  const bool existed = fs::exists(dest);
  auto cleanup = [&] {
    std::error_code ec;
    if (existed) {
      for (const auto& e : fs::directory_iterator(dest, ec)) fs::remove_all(e.path(), ec);
    } else {
      fs::remove_all(dest, ec);
    }
  };
  if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
  auto res = util::run_process({"git", "clone", "--quiet", "--no-local", "--no-checkout", spec.clone_url, dest.string()});
  if (res.exit_code != 0) {
    cleanup();
    throw CloneFailed("clone-error", res.err);
  }
  try {
    try {
      git::git_output(dest, {"cat-file", "-e", spec.head_commit + "^{commit}"});
    } catch (const git::GitError&) {
      throw CloneFailed("pin-unreachable", spec.head_commit);
    }
    try {
      git::git_output(dest, {"checkout", "--quiet", "--detach", spec.head_commit});
    } catch (const git::GitError& e) {
      throw CloneFailed("checkout-error", e.what());
    }
    auto head = git::git_output(dest, {"rev-parse", "HEAD"});
    while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back()))) head.pop_back();
    if (head != spec.head_commit) throw CloneFailed("head-mismatch", head);
  } catch (...) {
    cleanup();
    throw;
  }
  CloneResult out;
  out.bytes_on_disk = tree_bytes(dest);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace cam::repo
