#include "cam/pipeline/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <mutex>

#include "cam/filter/filter.hpp"
#include "cam/git/history.hpp"
#include "cam/metrics/measure.hpp"
#include "cam/util/files.hpp"
#include "cam/util/parallel.hpp"
#include "cam/util/text.hpp"

namespace cam::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kRepoStages = {"clone", "filter", "measure"};

long long epoch_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
}

json spec_json(const repo::RepoSpec& s) {
  return {{"full_name", s.full_name},         {"stars", s.stars},
          {"size_kb", s.size_kb},             {"default_branch", s.default_branch},
          {"head_commit", s.head_commit},     {"discovered_at", s.discovered_at},
          {"clone_url", s.clone_url}};
}

repo::RepoSpec spec_from_json(const json& j) {
  repo::RepoSpec s;
  s.full_name = j.at("full_name").get<std::string>();
  s.stars = j.at("stars").get<long long>();
  s.size_kb = j.at("size_kb").get<long long>();
  s.default_branch = j.at("default_branch").get<std::string>();
  s.head_commit = j.at("head_commit").get<std::string>();
  s.discovered_at = j.at("discovered_at").get<std::string>();
  s.clone_url = j.at("clone_url").get<std::string>();
  return s;
}

struct Discovery {
  std::vector<repo::RepoSpec> repos;
  bool search_cap_exceeded = false;
};

/// Per-repo stage status persisted under state/.
class RepoState {
 public:
  RepoState(fs::path file) : file_(std::move(file)) {
    if (fs::exists(file_)) data_ = json::parse(util::read_file(file_));
    for (const auto& s : kRepoStages) {
      if (!data_.contains(s)) data_[s] = "pending";
    }
    if (!data_.contains("errors")) data_["errors"] = json::object();
  }

  std::string status(const std::string& stage) const { return data_.at(stage).get<std::string>(); }
  bool done(const std::string& stage) const { return status(stage) == "done"; }
  bool failed() const {
    return std::any_of(kRepoStages.begin(), kRepoStages.end(), [&](const auto& s) { return status(s) == "failed"; });
  }
  std::string error() const {
    for (const auto& s : kRepoStages) {
      if (data_["errors"].contains(s)) return s + ": " + data_["errors"][s].get<std::string>();
    }
    return {};
  }

  /// Records an outcome; later stages go back to pending because their
  /// inputs changed.
  void set(const std::string& stage, const std::string& status, const std::string& error = {}) {
    data_[stage] = status;
    if (error.empty()) {
      data_["errors"].erase(stage);
    } else {
      data_["errors"][stage] = error;
    }
    bool later = false;
    for (const auto& s : kRepoStages) {
      if (later) {
        data_[s] = "pending";
        data_["errors"].erase(s);
      }
      if (s == stage) later = true;
    }
    util::write_file_atomic(file_, data_.dump() + "\n");
  }

 private:
  fs::path file_;
  json data_;
};

class Runner {
 public:
  explicit Runner(const RunConfig& config)
      : config_(config), layout_{config.workdir}, out_(config.progress ? *config.progress : std::cerr) {}

  RunOutcome run() {
    RunOutcome outcome;
    started_ = epoch_now();
    const bool pack_selected = selected(Stage::Pack);

    if (selected(Stage::Discover)) stage_discover();
    std::optional<Discovery> found = load_discovery();
    if (!found) {
      if (needs_discovery()) throw ConfigError("no discovery.json in workdir; run the discover stage first");
      found = Discovery{};
    }
    discovery_ = std::move(*found);

    bool repo_stage_ran = false;
    if (selected(Stage::Clone)) {
      stage_clone();
      repo_stage_ran = true;
    }
    if (selected(Stage::Filter)) {
      stage_filter();
      repo_stage_ran = true;
    }
    if (selected(Stage::Measure)) {
      stage_measure();
      repo_stage_ran = true;
    }

    outcome.manifest = build_manifest();
    if (selected(Stage::Aggregate)) stage_aggregate(outcome.manifest);
    if (pack_selected) {
      try {
        outcome.archive = stage_pack();
      } catch (const std::exception& e) {
        report("-", "pack", "failed");
        std::cerr << "pack failed: " << e.what() << "\n";
      }
    }
    util::write_file_atomic(layout_.manifest(), dataset::manifest_text(outcome.manifest));

    const auto ok = std::count_if(outcome.manifest.repos.begin(), outcome.manifest.repos.end(),
                                  [](const auto& r) { return r.status == dataset::RepoStatus::Ok; });
    const auto failed = std::count_if(outcome.manifest.repos.begin(), outcome.manifest.repos.end(),
                                      [](const auto& r) { return r.status == dataset::RepoStatus::Failed; });
    if (pack_selected) {
      outcome.exit_code = ok > 0 && outcome.archive ? 0 : 1;
    } else if (repo_stage_ran && !outcome.manifest.repos.empty() &&
               failed == static_cast<long>(outcome.manifest.repos.size())) {
      outcome.exit_code = 1;
    }
    return outcome;
  }

 private:
  bool selected(Stage s) const { return config_.stages.empty() || config_.stages.count(s) > 0; }

  bool needs_discovery() const {
    return selected(Stage::Clone) || selected(Stage::Filter) || selected(Stage::Measure);
  }

  void report(const std::string& repo, const std::string& stage, const std::string& status) {
    std::lock_guard lock(mutex_);
    if (status == "done") ++done_;
    if (status == "failed") ++failed_;
    if (config_.quiet) return;
    out_ << util::format_utc(epoch_now()) << '\t' << repo << '\t' << stage << '\t' << status << "\tdone=" << done_
         << "\tfailed=" << failed_ << '\n';
    out_.flush();
  }

  std::optional<Discovery> load_discovery() const {
    if (!fs::exists(layout_.discovery())) return std::nullopt;
    const auto j = json::parse(util::read_file(layout_.discovery()));
    Discovery d;
    for (const auto& r : j.at("repos")) d.repos.push_back(spec_from_json(r));
    d.search_cap_exceeded = j.value("search_cap_exceeded", false);
    return d;
  }

  void stage_discover() {
    if (fs::exists(layout_.discovery()) && !config_.force) {
      report("-", "discover", "skipped");
      return;
    }
    std::unique_ptr<repo::Transport> transport;
    if (config_.replay) {
      transport = std::make_unique<repo::ReplayTransport>(*config_.replay);
    } else {
      transport = std::make_unique<repo::HttpTransport>("https://api.github.com", config_.token);
    }
    repo::DiscoverOptions options;
    options.reproducible = config_.reproducible;
    auto result = repo::discover(config_.criteria, *transport, options);
    json j;
    j["repos"] = json::array();
    for (const auto& r : result.repos) j["repos"].push_back(spec_json(r));
    j["search_cap_exceeded"] = result.search_cap_exceeded;
    j["skipped"] = result.skipped;
    util::write_file_atomic(layout_.discovery(), j.dump(2) + "\n");
    report("-", "discover", "done");
  }

  void stage_clone() {
    util::parallel_for(discovery_.repos.size(), config_.jobs, [&](std::size_t i) {
      const auto& spec = discovery_.repos[i];
      RepoState state(layout_.state(spec));
      if (state.done("clone") && !config_.force) {
        report(spec.full_name, "clone", "skipped");
        return;
      }
      const auto dest = repo::clone_dir(layout_.root, spec);
      std::error_code ec;
      fs::remove_all(dest, ec);
      try {
        repo::clone(spec, dest);
        state.set("clone", "done");
        report(spec.full_name, "clone", "done");
      } catch (const std::exception& e) {
        state.set("clone", "failed", e.what());
        report(spec.full_name, "clone", "failed");
      }
    });
  }

  void stage_filter() {
    for (const auto& spec : discovery_.repos) {
      RepoState state(layout_.state(spec));
      if (!state.done("clone")) continue;
      if (state.done("filter") && !config_.force) {
        report(spec.full_name, "filter", "skipped");
        continue;
      }
      try {
        auto tree = filter::filter_tree(repo::clone_dir(layout_.root, spec), spec.full_name, config_.jobs);
        json j;
        j["records"] = json::array();
        for (const auto& r : tree.records) {
          j["records"].push_back({{"path", r.relative_path},
                                  {"byte_size", r.byte_size},
                                  {"verdict", r.kept() ? "kept" : std::string(filter::reason_code(*r.reject))},
                                  {"detail", r.detail}});
        }
        j["stats"] = tree.stats.counts;
        util::write_file_atomic(layout_.filtered(spec), j.dump(1) + "\n");
        state.set("filter", "done");
        report(spec.full_name, "filter", "done");
      } catch (const std::exception& e) {
        state.set("filter", "failed", e.what());
        report(spec.full_name, "filter", "failed");
      }
    }
  }

  void stage_measure() {
    for (const auto& spec : discovery_.repos) {
      RepoState state(layout_.state(spec));
      if (!state.done("filter")) continue;
      if (state.done("measure") && !config_.force) {
        report(spec.full_name, "measure", "skipped");
        continue;
      }
      try {
        const auto root = repo::clone_dir(layout_.root, spec);
        const auto filtered = json::parse(util::read_file(layout_.filtered(spec)));
        std::vector<std::string> kept;
        for (const auto& r : filtered.at("records")) {
          if (r.at("verdict") == "kept") kept.push_back(r.at("path").get<std::string>());
        }
        std::vector<metrics::SourceFile> files(kept.size());
        util::parallel_for(kept.size(), config_.jobs, [&](std::size_t i) {
          files[i].path = kept[i];
          files[i].text = util::read_file(root / kept[i]);
          files[i].parsed = std::make_shared<const java::ParsedFile>(java::parse_file(files[i].text));
        });
        auto lookup = [&](const std::string& path) -> std::optional<git::GitColumns> {
          try {
            return git::derived_columns(git::history_for(root, path, spec.head_commit));
          } catch (const git::UntrackedFile&) {
            return std::nullopt;
          }
        };
        auto result = metrics::measure_repo(files, spec.full_name, lookup, config_.jobs);
        util::write_file_atomic(layout_.measured(spec), dataset::csv_text(result.rows));
        json meta = {{"rows", result.rows.size()}, {"dit_cycles", result.dit_cycles}, {"skipped", result.skipped}};
        util::write_file_atomic(layout_.measured_meta(spec), meta.dump() + "\n");
        state.set("measure", "done");
        report(spec.full_name, "measure", "done");
      } catch (const std::exception& e) {
        state.set("measure", "failed", e.what());
        report(spec.full_name, "measure", "failed");
      }
    }
  }

  dataset::RunManifest build_manifest() const {
    dataset::RunManifest m;
    m.criteria = config_.criteria;
    m.search_cap_exceeded = discovery_.search_cap_exceeded;
    std::string latest;
    for (const auto& spec : discovery_.repos) {
      dataset::RepoEntry e;
      e.spec = spec;
      latest = std::max(latest, spec.discovered_at);
      RepoState state(layout_.state(spec));
      if (state.failed()) {
        e.status = dataset::RepoStatus::Failed;
        e.error = state.error();
      } else if (state.done("measure")) {
        e.status = dataset::RepoStatus::Ok;
      }
      if (state.done("filter") && fs::exists(layout_.filtered(spec))) {
        const auto j = json::parse(util::read_file(layout_.filtered(spec)));
        for (const auto& [k, v] : j.at("stats").items()) e.filter_stats.counts[k] = v.get<long long>();
      }
      if (e.status == dataset::RepoStatus::Ok) {
        const auto meta = json::parse(util::read_file(layout_.measured_meta(spec)));
        e.rows = meta.at("rows").get<long long>();
        e.dit_cycles = meta.at("dit_cycles").get<std::vector<std::string>>();
        e.skipped_files = meta.at("skipped").get<std::vector<std::string>>();
      }
      m.repos.push_back(std::move(e));
    }
    std::sort(m.repos.begin(), m.repos.end(),
              [](const auto& a, const auto& b) { return a.spec.full_name < b.spec.full_name; });
    if (config_.reproducible) {
      m.started_at = m.finished_at = latest.empty() ? util::format_utc(0) : latest;
    } else {
      m.started_at = util::format_utc(started_);
      m.finished_at = util::format_utc(epoch_now());
    }
    return m;
  }

  void stage_aggregate(const dataset::RunManifest& manifest) {
    const auto out = layout_.out();
    std::error_code ec;
    fs::remove_all(out, ec);
    fs::create_directories(out / "data");
    std::vector<metrics::ClassRow> all;
    for (const auto& entry : manifest.repos) {
      if (entry.status != dataset::RepoStatus::Ok) continue;
      auto rows = dataset::read_rows(util::read_file(layout_.measured(entry.spec)));
      util::write_file_atomic(out / "data" / (entry.spec.slug() + ".csv"), dataset::csv_text(rows));
      all.insert(all.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    util::write_file_atomic(out / "data" / "all.csv", dataset::csv_text(std::move(all)));
    util::write_file_atomic(out / "manifest.json", dataset::manifest_text(manifest));
    util::write_file_atomic(out / "schema.md", dataset::schema_markdown());
    report("-", "aggregate", "done");
  }

  fs::path stage_pack() {
    const auto out = layout_.out();
    if (!fs::exists(out / "manifest.json")) throw std::runtime_error("nothing to pack; run aggregate first");
    std::vector<dataset::ArchiveEntry> entries;
    for (const auto& e : fs::recursive_directory_iterator(out)) {
      if (!e.is_regular_file()) continue;
      entries.push_back({fs::relative(e.path(), out).generic_string(), util::read_file(e.path())});
    }
    dataset::write_zip(std::move(entries), layout_.archive());
    report("-", "pack", "done");
    return layout_.archive();
  }

  const RunConfig& config_;
  Layout layout_;
  std::ostream& out_;
  std::mutex mutex_;
  Discovery discovery_;
  long long started_ = 0;
  long long done_ = 0;
  long long failed_ = 0;
};

}  // namespace

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::Discover: return "discover";
    case Stage::Clone: return "clone";
    case Stage::Filter: return "filter";
    case Stage::Measure: return "measure";
    case Stage::Aggregate: return "aggregate";
    case Stage::Pack: return "pack";
  }
  return {};
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> kAll = {Stage::Discover, Stage::Clone,     Stage::Filter,
                                          Stage::Measure,  Stage::Aggregate, Stage::Pack};
  return kAll;
}

std::optional<Stage> stage_from_string(const std::string& name) {
  for (auto s : all_stages()) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  try {
    criteria.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (workdir.empty()) throw ConfigError("workdir must be set");
  if (replay && !fs::exists(*replay / "index.json")) {
    throw ConfigError("replay directory has no index.json: " + replay->string());
  }
  std::error_code ec;
  fs::create_directories(workdir, ec);
  if (ec || !fs::is_directory(workdir)) throw ConfigError("workdir is not writable: " + workdir.string());
  const auto probe = workdir / ".cam-write-probe";
  try {
    util::write_file_atomic(probe, "");
    fs::remove(probe);
  } catch (const std::exception&) {
    throw ConfigError("workdir is not writable: " + workdir.string());
  }
}

RunOutcome run(const RunConfig& config) {
  config.validate();
  return Runner(config).run();
}

}  // namespace cam::pipeline
