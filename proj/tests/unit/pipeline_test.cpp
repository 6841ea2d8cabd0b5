#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "../support/pipeline_fixture.hpp"
#include "cam/dataset/dataset.hpp"
#include "cam/pipeline/pipeline.hpp"
#include "cam/util/files.hpp"

using namespace cam;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

pipeline::RunConfig config_for(const cam::testing::PipelineFixture& fx, const std::string& name, std::size_t jobs,
                               std::ostream* progress) {
  pipeline::RunConfig c;
  c.criteria = fx.criteria();
  c.workdir = fx.workdir(name);
  c.jobs = jobs;
  c.reproducible = true;
  c.replay = fx.replay();
  c.progress = progress;
  return c;
}

const metrics::ClassRow* find_row(const std::vector<metrics::ClassRow>& rows, const std::string& cls) {
  for (const auto& r : rows) {
    if (r.class_name == cls) return &r;
  }
  return nullptr;
}

double col(const metrics::ClassRow& r, metrics::Column c) { return r.values[static_cast<std::size_t>(c)]; }

int file_lines(const fs::path& p) {
  const auto s = util::read_file(p);
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

class PipelineTest : public ::testing::Test {
 protected:
  cam::testing::PipelineFixture fx{CAM_FIXTURE_DIR};
};

TEST_F(PipelineTest, EndToEnd) {
  std::ostringstream log;
  auto cfg = config_for(fx, "a", 1, &log);
  auto outcome = pipeline::run(cfg);
  EXPECT_EQ(outcome.exit_code, 0) << log.str();
  ASSERT_TRUE(outcome.archive);
  EXPECT_TRUE(fs::exists(*outcome.archive));

  const auto& repos = outcome.manifest.repos;
  ASSERT_EQ(repos.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(repos[i].status, dataset::RepoStatus::Ok) << repos[i].error;
    EXPECT_EQ(repos[i].spec.head_commit, fx.pins()[i]);
    EXPECT_EQ(repos[i].spec.discovered_at, "2023-02-01T10:00:00Z");
  }
  const auto& a = repos[0].filter_stats;
  EXPECT_EQ(a.get("kept"), 4);
  EXPECT_EQ(a.get("not-java-ext"), 1);
  EXPECT_EQ(a.get("forbidden-name"), 1);
  EXPECT_EQ(a.get("unparseable"), 1);
  EXPECT_EQ(a.get("test-file"), 1);
  EXPECT_EQ(repos[1].filter_stats.get("kept"), 3);
  EXPECT_EQ(repos[1].filter_stats.get("not-java-ext"), 1);
  EXPECT_EQ(repos[2].filter_stats.get("kept"), 1);
  EXPECT_EQ(repos[2].filter_stats.get("too-long-line"), 1);
  EXPECT_EQ(repos[2].filter_stats.get("unparseable"), 1);
  EXPECT_EQ(repos[0].rows, 4);
  EXPECT_EQ(repos[1].rows, 3);
  EXPECT_EQ(repos[2].rows, 2);

  const auto out = cfg.workdir / "out";
  const auto all_text = util::read_file(out / "data" / "all.csv");
  const auto records = dataset::parse_csv(all_text);
  ASSERT_EQ(records.size(), 10u);
  for (const auto& r : records) EXPECT_EQ(r.size(), 51u);
  EXPECT_TRUE(fs::exists(out / "data" / "alpha__core.csv"));
  EXPECT_TRUE(fs::exists(out / "data" / "gamma__tools.csv"));
  EXPECT_TRUE(fs::exists(out / "schema.md"));
  EXPECT_EQ(util::read_file(out / "manifest.json"), util::read_file(cfg.workdir / "manifest.json"));
  EXPECT_EQ(all_text.find("Later"), std::string::npos);

  const auto rows = dataset::read_rows(all_text);
  const auto* square = find_row(rows, "Square");
  ASSERT_NE(square, nullptr);
  EXPECT_EQ(square->path, "src/main/java/com/alpha/shapes/Square.java");
  EXPECT_EQ(col(*square, metrics::Column::kDit), 1);
  EXPECT_EQ(col(*square, metrics::Column::kCommits), 2);
  EXPECT_EQ(col(*square, metrics::Column::kAuthors), 2);
  EXPECT_EQ(col(*square, metrics::Column::kAgeDays), 3);
  EXPECT_EQ(col(*square, metrics::Column::kChurnAdded),
            file_lines(fs::path(CAM_FIXTURE_DIR) / "repos/alpha/src/main/java/com/alpha/shapes/Square.java") + 1);
  EXPECT_EQ(col(*square, metrics::Column::kChurnDeleted), 0);
  EXPECT_EQ(col(*find_row(rows, "Polygon"), metrics::Column::kNoc), 1);
  EXPECT_EQ(col(*find_row(rows, "Counter"), metrics::Column::kNoc), 1);
  EXPECT_EQ(col(*find_row(rows, "Gauge"), metrics::Column::kDit), 1);
  EXPECT_EQ(col(*find_row(rows, "Registry"), metrics::Column::kCbo), 2);
  EXPECT_EQ(find_row(rows, "PairUtil")->path, "tools/Pair.java");

  const auto lines = log.str();
  EXPECT_NE(lines.find("\talpha/core\tclone\tdone\t"), std::string::npos);
  EXPECT_NE(lines.find("\t-\tpack\tdone\t"), std::string::npos);
}

TEST_F(PipelineTest, DeterministicAcrossRunsAndJobs) {
  std::ostringstream sink;
  auto one = pipeline::run(config_for(fx, "one", 1, &sink));
  auto eight = pipeline::run(config_for(fx, "eight", 8, &sink));
  ASSERT_EQ(one.exit_code, 0);
  ASSERT_EQ(eight.exit_code, 0);
  for (const char* f : {"out/data/all.csv", "out/manifest.json", "out/schema.md", "dataset.zip"}) {
    EXPECT_EQ(util::read_file(fx.workdir("one") / f), util::read_file(fx.workdir("eight") / f)) << f;
  }
}

TEST_F(PipelineTest, ResumeSkipsFinishedWork) {
  std::ostringstream first;
  auto cfg = config_for(fx, "r", 2, &first);
  ASSERT_EQ(pipeline::run(cfg).exit_code, 0);
  const auto before = util::read_file(cfg.workdir / "dataset.zip");
  std::ostringstream second;
  cfg.progress = &second;
  ASSERT_EQ(pipeline::run(cfg).exit_code, 0);
  const auto lines = second.str();
  EXPECT_EQ(lines.find("\tclone\tdone"), std::string::npos);
  EXPECT_NE(lines.find("\tbeta/util\tclone\tskipped\t"), std::string::npos);
  EXPECT_NE(lines.find("\t-\tdiscover\tskipped\t"), std::string::npos);
  EXPECT_EQ(util::read_file(cfg.workdir / "dataset.zip"), before);
}

TEST_F(PipelineTest, DiscoverOnly) {
  std::ostringstream sink;
  auto cfg = config_for(fx, "d", 1, &sink);
  cfg.stages = {pipeline::Stage::Discover};
  auto outcome = pipeline::run(cfg);
  EXPECT_EQ(outcome.exit_code, 0);
  EXPECT_FALSE(fs::exists(cfg.workdir / "github"));
  const auto j = json::parse(util::read_file(cfg.workdir / "manifest.json"));
  ASSERT_EQ(j["repos"].size(), 3u);
  EXPECT_EQ(j["repos"][0]["head_commit"], fx.pins()[0]);
  EXPECT_EQ(j["repos"][0]["status"], "pending");
}

TEST_F(PipelineTest, LaterStageWithoutDiscoveryIsConfigError) {
  auto cfg = config_for(fx, "x", 1, nullptr);
  cfg.stages = {pipeline::Stage::Filter};
  EXPECT_THROW(pipeline::run(cfg), pipeline::ConfigError);
}

TEST_F(PipelineTest, QuietSuppressesProgress) {
  std::ostringstream log;
  auto cfg = config_for(fx, "q", 1, &log);
  cfg.quiet = true;
  cfg.stages = {pipeline::Stage::Discover};
  pipeline::run(cfg);
  EXPECT_TRUE(log.str().empty());
}

TEST_F(PipelineTest, TokenNeverPersisted) {
  std::ostringstream log;
  auto cfg = config_for(fx, "t", 1, &log);
  cfg.token = "ghp_secretsecretsecret";
  ASSERT_EQ(pipeline::run(cfg).exit_code, 0);
  EXPECT_EQ(log.str().find("secret"), std::string::npos);
  for (const auto& e : fs::recursive_directory_iterator(cfg.workdir)) {
    if (!e.is_regular_file() || e.path().string().find("/github/") != std::string::npos) continue;
    EXPECT_EQ(util::read_file(e.path()).find("secret"), std::string::npos) << e.path();
  }
}

TEST_F(PipelineTest, InvalidConfig) {
  auto cfg = config_for(fx, "bad", 1, nullptr);
  cfg.jobs = 0;
  EXPECT_THROW(pipeline::run(cfg), pipeline::ConfigError);
  cfg.jobs = 1;
  cfg.replay = fx.root() / "nowhere";
  EXPECT_THROW(pipeline::run(cfg), pipeline::ConfigError);
}

TEST(PipelineFailures, FailedCloneDoesNotStopRun) {
  auto repos = cam::testing::PipelineFixture::default_repos();
  repos.push_back({"delta/gone", "", 8000});
  cam::testing::PipelineFixture fx(CAM_FIXTURE_DIR, repos);
  std::ostringstream log;
  auto outcome = pipeline::run(config_for(fx, "f", 4, &log));
  EXPECT_EQ(outcome.exit_code, 0);
  ASSERT_EQ(outcome.manifest.repos.size(), 4u);
  const auto& gone = outcome.manifest.repos[2];
  EXPECT_EQ(gone.spec.full_name, "delta/gone");
  EXPECT_EQ(gone.status, dataset::RepoStatus::Failed);
  EXPECT_EQ(gone.rows, 0);
  EXPECT_NE(gone.error.find("clone"), std::string::npos);
  EXPECT_NE(log.str().find("\tdelta/gone\tclone\tfailed\t"), std::string::npos);
  EXPECT_FALSE(fs::exists(fx.workdir("f") / "out" / "data" / "delta__gone.csv"));
}

TEST(PipelineFailures, AllReposFailed) {
  cam::testing::PipelineFixture fx(CAM_FIXTURE_DIR, {{"delta/gone", "", 8000}});
  std::ostringstream log;
  auto outcome = pipeline::run(config_for(fx, "f", 1, &log));
  EXPECT_EQ(outcome.exit_code, 1);
}
