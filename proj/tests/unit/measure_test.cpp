#include <gtest/gtest.h>

#include <cmath>

#include "cam/metrics/measure.hpp"

using namespace cam;
using metrics::Column;

namespace {

metrics::SourceFile source(std::string path, std::string text) {
  metrics::SourceFile f{std::move(path), std::move(text), nullptr};
  f.parsed = std::make_shared<const java::ParsedFile>(java::parse_file(f.text));
  return f;
}

double at(const metrics::ClassRow& r, Column c) { return r.values[static_cast<std::size_t>(c)]; }

std::optional<git::GitColumns> fixed_history(const std::string&) { return git::GitColumns{3, 2, 5, 40, 4}; }

}  // namespace

TEST(Measure, TwoTopLevelClassesSplitTheFile) {
  const auto f = source("p/A.java",
                        "package p;\n"
                        "import java.util.List;\n"
                        "\n"
                        "class A {\n"
                        "  int x;\n"
                        "}\n"
                        "// trailing note\n"
                        "class B extends A {\n"
                        "}\n"
                        "\n");
  auto rows = metrics::measure_file(f, "o/r");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].class_name, "A");
  EXPECT_EQ(at(rows[0], Column::kLoc), 6);
  EXPECT_EQ(at(rows[0], Column::kBlanks), 1);
  EXPECT_EQ(at(rows[0], Column::kNcss), 4);  // package, import, header, field
  EXPECT_EQ(at(rows[1], Column::kLoc), 4);
  EXPECT_EQ(at(rows[1], Column::kComments), 1);
  EXPECT_EQ(at(rows[1], Column::kBlanks), 1);
  EXPECT_EQ(at(rows[1], Column::kNcss), 1);
  EXPECT_EQ(at(rows[0], Column::kImportsCount), 1);
  EXPECT_TRUE(std::isnan(at(rows[0], Column::kCbo)));
  EXPECT_TRUE(std::isnan(at(rows[0], Column::kCommits)));
}

TEST(Measure, RepoFillsGraphAndHistory) {
  std::vector<metrics::SourceFile> files = {
      source("q/C.java", "package q;\nclass C extends D {}\n"),
      source("q/D.java", "package q;\nclass D extends C {}\n"),
      source("q/E.java", "package q;\nclass E extends C { D d; }\n"),
      source("q/F.java", "package q;\nclass F {}\n"),
  };
  auto lookup = [](const std::string& path) -> std::optional<git::GitColumns> {
    if (path == "q/F.java") return std::nullopt;
    return fixed_history(path);
  };
  for (std::size_t jobs : {1u, 4u}) {
    auto m = metrics::measure_repo(files, "o/r", lookup, jobs);
    ASSERT_EQ(m.rows.size(), 3u);
    EXPECT_EQ(m.skipped, (std::vector<std::string>{"q/F.java"}));
    EXPECT_EQ(m.dit_cycles, (std::vector<std::string>{"q/C.java:C", "q/D.java:D"}));
    EXPECT_EQ(at(m.rows[0], Column::kDit), 1);
    EXPECT_EQ(at(m.rows[2], Column::kDit), 2);
    EXPECT_EQ(at(m.rows[2], Column::kCbo), 2);
    EXPECT_EQ(at(m.rows[0], Column::kNoc), 2);
    EXPECT_EQ(at(m.rows[1], Column::kCommits), 3);
    EXPECT_EQ(at(m.rows[1], Column::kAuthors), 2);
    EXPECT_EQ(at(m.rows[1], Column::kAgeDays), 5);
    EXPECT_EQ(at(m.rows[1], Column::kChurnAdded), 40);
    EXPECT_EQ(at(m.rows[1], Column::kChurnDeleted), 4);
  }
}

TEST(Measure, RowsSortedByPathThenClass) {
  std::vector<metrics::SourceFile> files = {source("b/Z.java", "class Z {}\nclass Y {}\n"),
                                            source("a/Q.java", "class Q {}\n")};
  auto m = metrics::measure_repo(files, "o/r", fixed_history, 2);
  ASSERT_EQ(m.rows.size(), 3u);
  EXPECT_EQ(m.rows[0].class_name, "Q");
  EXPECT_EQ(m.rows[1].class_name, "Y");
  EXPECT_EQ(m.rows[2].class_name, "Z");
}
