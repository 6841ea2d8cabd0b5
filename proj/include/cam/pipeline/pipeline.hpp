#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cam/dataset/dataset.hpp"
#include "cam/repo/source.hpp"

namespace cam::pipeline {

enum class Stage { Discover, Clone, Filter, Measure, Aggregate, Pack };

std::string to_string(Stage stage);
std::optional<Stage> stage_from_string(const std::string& name);
const std::vector<Stage>& all_stages();

/// Invalid configuration; the CLI maps it to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  repo::DiscoveryCriteria criteria;
  std::filesystem::path workdir = "cam-work";
  std::size_t jobs = 1;
  bool reproducible = false;
  std::set<Stage> stages;  // empty means every stage
  bool force = false;
  std::optional<std::filesystem::path> replay;
  bool quiet = false;
  std::string token;  // never written anywhere
  std::ostream* progress = nullptr;  // defaults to std::cerr

  /// Throws ConfigError.
  void validate() const;
};

struct RunOutcome {
  int exit_code = 0;
  dataset::RunManifest manifest;
  std::optional<std::filesystem::path> archive;
};

/// Runs the selected stages in order. Work already recorded as done in the
/// workdir is skipped unless `force` is set; aggregate and pack always run
/// when selected.
RunOutcome run(const RunConfig& config);

/// Locations inside a workdir.
struct Layout {
  std::filesystem::path root;

  std::filesystem::path discovery() const { return root / "discovery.json"; }
  std::filesystem::path state(const repo::RepoSpec& spec) const { return root / "state" / (spec.slug() + ".json"); }
  std::filesystem::path filtered(const repo::RepoSpec& spec) const {
    return root / "filtered" / (spec.slug() + ".json");
  }
  std::filesystem::path measured(const repo::RepoSpec& spec) const {
    return root / "measured" / (spec.slug() + ".csv");
  }
  std::filesystem::path measured_meta(const repo::RepoSpec& spec) const {
    return root / "measured" / (spec.slug() + ".json");
  }
  std::filesystem::path out() const { return root / "out"; }
  std::filesystem::path manifest() const { return root / "manifest.json"; }
  std::filesystem::path archive() const { return root / "dataset.zip"; }
};

}  // namespace cam::pipeline
