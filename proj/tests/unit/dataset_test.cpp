#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "../support/temp_dir.hpp"
#include "cam/dataset/dataset.hpp"
#include "cam/util/files.hpp"
#include "cam/util/process.hpp"

using namespace cam;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

metrics::ClassRow row(std::string repo, std::string path, std::string cls, double fill) {
  metrics::ClassRow r{std::move(repo), std::move(path), std::move(cls), {}};
  r.values.fill(fill);
  return r;
}

dataset::RunManifest sample_manifest() {
  dataset::RunManifest m;
  dataset::RepoEntry ok;
  ok.spec.full_name = "a/one";
  ok.spec.head_commit = std::string(40, 'a');
  ok.spec.default_branch = "main";
  ok.spec.discovered_at = "2023-01-02T03:04:05Z";
  ok.status = dataset::RepoStatus::Ok;
  ok.filter_stats.counts = {{"kept", 3}, {"unparseable", 1}, {"test-file", 2}};
  ok.rows = 4;
  dataset::RepoEntry bad = ok;
  bad.spec.full_name = "b/two";
  bad.status = dataset::RepoStatus::Failed;
  bad.error = "clone: pin-unreachable";
  bad.filter_stats = {};
  bad.rows = 0;
  m.repos = {ok, bad};
  m.started_at = m.finished_at = "2023-01-02T03:04:05Z";
  return m;
}

}  // namespace

TEST(Csv, HeaderOnlyForNoRows) {
  const auto text = dataset::csv_text({});
  EXPECT_EQ(text, dataset::csv_header());
  EXPECT_EQ(dataset::split_csv_line(text.substr(0, text.size() - 1)).size(), 51u);
  EXPECT_EQ(text.rfind("repo,path,class_name,loc,kloc,", 0), 0u);
}

TEST(Csv, FormatValue) {
  EXPECT_EQ(dataset::format_value(kNaN, false), "");
  EXPECT_EQ(dataset::format_value(kNaN, true), "");
  EXPECT_EQ(dataset::format_value(12, true), "12");
  EXPECT_EQ(dataset::format_value(0.1, false), "0.1");
  EXPECT_EQ(dataset::format_value(0.25, false), "0.25");
  EXPECT_EQ(dataset::format_value(1.0 / 3.0, false), "0.3333333333333333");
  EXPECT_EQ(dataset::format_value(3, false), "3");
}

TEST(Csv, RowsSortedAndQuoted) {
  std::vector<metrics::ClassRow> rows = {row("b/r", "Z.java", "Z", 1), row("a/r", "dir,x/B.java", "B", 2),
                                         row("a/r", "A.java", "A", 3)};
  rows[0].values[0] = kNaN;
  const auto text = dataset::csv_text(rows);
  const auto records = dataset::parse_csv(text);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[1][1], "A.java");
  EXPECT_EQ(records[2][1], "dir,x/B.java");
  EXPECT_EQ(records[3][0], "b/r");
  EXPECT_EQ(records[3][3], "");
  for (const auto& r : records) EXPECT_EQ(r.size(), 51u);
  EXPECT_NE(text.find("\"dir,x/B.java\""), std::string::npos);
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(Csv, RoundTrip) {
  std::vector<metrics::ClassRow> rows = {row("a/r", "p/Q.java", "Q", 0.1), row("a/r", "q \"x\".java", "X", 7)};
  rows[1].values[5] = kNaN;
  const auto text = dataset::csv_text(rows);
  const auto back = dataset::read_rows(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(dataset::csv_text(back), text);
  EXPECT_TRUE(std::isnan(back[1].values[5]));
  EXPECT_EQ(back[1].path, "q \"x\".java");
}

TEST(Csv, RejectsWrongWidth) {
  EXPECT_THROW(dataset::read_rows(dataset::csv_header() + "a,b,c\n"), std::runtime_error);
}

TEST(Manifest, ByteIdentical) {
  cam::testing::TempDir dir;
  const auto m = sample_manifest();
  dataset::write_manifest(m, dir / "a.json");
  dataset::write_manifest(m, dir / "b.json");
  EXPECT_EQ(util::read_file(dir / "a.json"), util::read_file(dir / "b.json"));
}

TEST(Manifest, Contents) {
  const auto j = dataset::manifest_json(sample_manifest());
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["schema"].size(), 48u);
  EXPECT_EQ(j["criteria"]["query"], "language:java stars:1000..10000 size:>=200");
  EXPECT_EQ(j["repos"][1]["status"], "failed");
  EXPECT_EQ(j["repos"][1]["rows"], 0);
  EXPECT_EQ(j["repos"][1]["error"], "clone: pin-unreachable");
  EXPECT_EQ(j["repos"][0]["filter_stats"]["unparseable"], 1);
  EXPECT_EQ(j["repos"][0]["filter_stats"]["not-java-ext"], 0);
  EXPECT_EQ(j["filter_stats"]["test-file"], 2);
  EXPECT_EQ(j["parse_rejects"], 1);
  EXPECT_EQ(j["rows"], 4);
  EXPECT_EQ(j["schema"][0]["name"], "loc");
  EXPECT_EQ(j["schema"][47]["name"], "returns_count");
  EXPECT_EQ(j["schema"][20]["origin"], "core");
  EXPECT_EQ(j["schema"][29]["group"], "git");
  const auto text = dataset::manifest_text(sample_manifest());
  EXPECT_EQ(text.find("\n "), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Manifest, DefinitionHashTracksText) {
  auto col = metrics::columns()[0];
  const auto before = metrics::definition_hash(col);
  EXPECT_EQ(before.size(), 64u);
  std::string changed = std::string(col.definition) + " ";
  col.definition = changed;
  EXPECT_NE(metrics::definition_hash(col), before);
  std::set<std::string> all;
  for (const auto& c : metrics::columns()) all.insert(metrics::definition_hash(c));
  EXPECT_EQ(all.size(), 48u);
}

TEST(Schema, MarkdownListsEveryColumn) {
  const auto md = dataset::schema_markdown();
  for (const auto& c : metrics::columns()) {
    EXPECT_NE(md.find("| `" + std::string(c.name) + "` |"), std::string::npos) << c.name;
  }
}

TEST(Zip, DeterministicAndReadable) {
  cam::testing::TempDir dir;
  std::vector<dataset::ArchiveEntry> entries = {{"manifest.json", "{}\n"},
                                                {"data/all.csv", std::string(5000, 'x') + "\n"},
                                                {"schema.md", "# s\n"}};
  const auto a = dataset::zip_bytes(entries);
  std::reverse(entries.begin(), entries.end());
  const auto b = dataset::zip_bytes(entries);
  EXPECT_EQ(a, b);
  EXPECT_LT(a.size(), 1000u);
  dataset::write_zip(entries, dir / "d.zip");
  EXPECT_EQ(util::read_file(dir / "d.zip"), a);
  auto t = util::run_process({"python3", "-m", "zipfile", "-t", (dir / "d.zip").string()});
  EXPECT_EQ(t.exit_code, 0) << t.err;
  auto l = util::run_process({"python3", "-c",
                              "import sys,zipfile\nz=zipfile.ZipFile(sys.argv[1])\n"
                              "print(' '.join(i.filename+'@'+'-'.join(map(str,i.date_time)) for i in z.infolist()))\n"
                              "print(len(z.read('data/all.csv')))",
                              (dir / "d.zip").string()});
  ASSERT_EQ(l.exit_code, 0) << l.err;
  EXPECT_EQ(l.out,
            "data/all.csv@1980-1-1-0-0-0 manifest.json@1980-1-1-0-0-0 schema.md@1980-1-1-0-0-0\n5001\n");
}

TEST(Zip, DuplicateNamesRejected) {
  EXPECT_THROW(dataset::zip_bytes({{"a", "1"}, {"a", "2"}}), std::invalid_argument);
}
