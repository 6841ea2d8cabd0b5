#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "cam/pipeline/pipeline.hpp"

namespace {

struct Options {
  std::string workdir = "cam-work";
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  long long max_repos = 1000;
  long long min_stars = 1000;
  long long max_stars = 10000;
  long long min_size_kb = 200;
  std::string language = "java";
  std::string stages;
  bool force = false;
  bool reproducible = false;
  std::string replay;
  bool quiet = false;
};

void add_common(CLI::App& cmd, Options& o, bool with_stages) {
  cmd.add_option("--workdir", o.workdir, "Working directory for clones, state and outputs")->capture_default_str();
  cmd.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--max-repos", o.max_repos, "Number of repositories to keep")->capture_default_str();
  cmd.add_option("--min-stars", o.min_stars, "Lower star bound (inclusive)")->capture_default_str();
  cmd.add_option("--max-stars", o.max_stars, "Upper star bound (inclusive)")->capture_default_str();
  cmd.add_option("--min-size-kb", o.min_size_kb, "Minimum repository size in KB")->capture_default_str();
  cmd.add_option("--language", o.language, "Language tag for the search")->capture_default_str();
  if (with_stages) cmd.add_option("--stages", o.stages, "Comma-separated stage list (default: all)");
  cmd.add_flag("--force", o.force, "Redo work already marked done");
  cmd.add_flag("--reproducible", o.reproducible, "Take manifest timestamps from the pinned inputs");
  cmd.add_option("--replay", o.replay, "Serve discovery from recorded responses in this directory");
  cmd.add_flag("--quiet", o.quiet, "Suppress progress lines");
}

cam::pipeline::RunConfig to_config(const Options& o, const std::string& command) {
  cam::pipeline::RunConfig c;
  c.criteria.language_tag = o.language;
  c.criteria.min_stars = o.min_stars;
  c.criteria.max_stars = o.max_stars;
  c.criteria.min_size_kb = o.min_size_kb;
  c.criteria.max_repos = o.max_repos;
  c.workdir = o.workdir;
  c.jobs = o.jobs;
  c.force = o.force;
  c.reproducible = o.reproducible;
  c.quiet = o.quiet;
  if (!o.replay.empty()) c.replay = o.replay;
  if (const char* token = std::getenv("CAM_TOKEN")) c.token = token;
  if (command != "run") {
    c.stages.insert(*cam::pipeline::stage_from_string(command));
  } else if (!o.stages.empty()) {
    std::stringstream ss(o.stages);
    std::string name;
    while (std::getline(ss, name, ',')) {
      auto stage = cam::pipeline::stage_from_string(name);
      if (!stage) throw cam::pipeline::ConfigError("unknown stage: " + name);
      c.stages.insert(*stage);
    }
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Builds a per-class metrics dataset from Java repositories"};
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags take precedence");
  app.require_subcommand(1);
  app.set_version_flag("--version", cam::dataset::kToolVersion);

  Options options;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"run", "Run the selected stages (all by default)"},
      {"discover", "Query the search API and pin repositories"},
      {"clone", "Clone discovered repositories at their pins"},
      {"filter", "Apply the file rules to each clone"},
      {"measure", "Parse kept files and compute metrics"},
      {"aggregate", "Write CSV files, manifest and schema"},
      {"pack", "Write the zip archive"},
  };
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(*cmd, options, name == "run");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    auto config = to_config(options, command);
    auto outcome = cam::pipeline::run(config);
    if (outcome.archive && !options.quiet) std::cerr << "archive: " << outcome.archive->string() << "\n";
    return outcome.exit_code;
  } catch (const cam::pipeline::ConfigError& e) {
    std::cerr << "cam: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cam: " << e.what() << "\n";
    return 1;
  }
}
