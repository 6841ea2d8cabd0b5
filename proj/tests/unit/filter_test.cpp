#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "../support/temp_dir.hpp"
#include "cam/filter/filter.hpp"
#include "cam/util/text.hpp"

using namespace cam;
using filter::RejectReason;

namespace {

std::optional<RejectReason> verdict(const std::string& path, const std::string& bytes) {
  return filter::filter_file(path, bytes).reject;
}

void put(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

}  // namespace

TEST(FilterFile, Examples) {
  EXPECT_EQ(verdict("README.md", "anything"), RejectReason::NotJavaExt);
  EXPECT_EQ(verdict("src/main/java/p/package-info.java", "package p;"), RejectReason::ForbiddenName);
  EXPECT_EQ(verdict("module-info.java", "module m {}"), RejectReason::ForbiddenName);
  auto kept = filter::filter_file("A.java", "class A {}");
  EXPECT_TRUE(kept.kept());
  ASSERT_TRUE(kept.parsed);
  EXPECT_EQ(kept.parsed->unit.types.at(0).name, "A");
  EXPECT_EQ(verdict("src/test/java/ATest.java", "class ATest {}"), RejectReason::TestFile);
}

TEST(FilterFile, LineLengthBoundary) {
  const std::string ok = "class A {}\n// " + std::string(1021, 'x') + "\n";
  const std::string bad = "class A {}\n// " + std::string(1022, 'x') + "\n";
  EXPECT_EQ(util::longest_line(ok), 1024u);
  EXPECT_FALSE(verdict("A.java", ok).has_value());
  EXPECT_EQ(verdict("A.java", bad), RejectReason::TooLongLine);
  EXPECT_EQ(verdict("A.java", "class A {}\n/*" + std::string(1025, 'x') + "*/"), RejectReason::TooLongLine);
}

TEST(FilterFile, LineLengthCountsCharacters) {
  std::string wide;
  for (int i = 0; i < 1020; ++i) wide += "\xC3\xA9";  // 2 bytes, 1 character each
  EXPECT_FALSE(verdict("A.java", "class A {}\n// " + wide + "\r\n").has_value());
  EXPECT_EQ(verdict("A.java", "class A {}\n// " + wide + "abc\n"), RejectReason::TooLongLine);
}

TEST(FilterFile, Undecodable) {
  EXPECT_EQ(verdict("A.java", "class A { String s = \"\xFF\"; }"), RejectReason::Undecodable);
  EXPECT_EQ(verdict("A.java", "class A {} // \xC0\xAF"), RejectReason::Undecodable);
  EXPECT_EQ(verdict("A.java", "class A {} // \xED\xA0\x80"), RejectReason::Undecodable);
}

TEST(FilterFile, TestHeuristics) {
  EXPECT_EQ(verdict("tests/A.java", "class A {}"), RejectReason::TestFile);
  EXPECT_EQ(verdict("x/TestFixtures/A.java", "class A {}"), RejectReason::TestFile);
  EXPECT_EQ(verdict("x/FooTests.java", "class FooTests {}"), RejectReason::TestFile);
  EXPECT_EQ(verdict("x/FooTestCase.java", "class FooTestCase {}"), RejectReason::TestFile);
  EXPECT_EQ(verdict("x/TestFoo.java", "class TestFoo {}"), RejectReason::TestFile);
  EXPECT_EQ(verdict("x/Foo.java", "import org.junit.Test;\nclass Foo {}"), RejectReason::TestFile);
  EXPECT_EQ(verdict("x/Foo.java", "import static org.testng.Assert.*;\nclass Foo {}"), RejectReason::TestFile);
  EXPECT_EQ(verdict("x/Foo.java", "  import junit.framework.TestCase;\nclass Foo {}"), RejectReason::TestFile);
  EXPECT_FALSE(verdict("contest/Foo.java", "class Foo {}").has_value());
  EXPECT_FALSE(verdict("x/Attest.java", "class Attest {}").has_value());
  EXPECT_FALSE(verdict("x/Foo.java", "// import org.junit.Test;\nclass Foo {}").has_value());
}

TEST(FilterFile, Unparseable) {
  auto r = filter::filter_file("R.java", "record R(int x) {}");
  EXPECT_EQ(r.reject, RejectReason::Unparseable);
  ASSERT_TRUE(r.parse_failure.has_value());
  EXPECT_EQ(r.parse_failure->line, 1u);
  EXPECT_EQ(verdict("S.java", "class S { String s = \"open; }"), RejectReason::Unparseable);
}

TEST(FilterFile, RuleOrder) {
  // Too long and a test file and unparseable: the long line wins.
  EXPECT_EQ(verdict("test/X.java", "record X() {}\n//" + std::string(2000, 'y')), RejectReason::TooLongLine);
  // A test file that does not parse is reported as a test file.
  EXPECT_EQ(verdict("test/X.java", "record X() {}"), RejectReason::TestFile);
  EXPECT_EQ(verdict("test/package-info.java", "\xFF"), RejectReason::ForbiddenName);
}

TEST(FilterTree, EmptyDirectory) {
  cam::testing::TempDir dir;
  auto result = filter::filter_tree(dir.path());
  EXPECT_TRUE(result.records.empty());
  EXPECT_EQ(result.stats.total(), 0);
}

TEST(FilterTree, MixedTree) {
  cam::testing::TempDir dir;
  put(dir / "src/A.java", "class A {}");
  put(dir / "notes.txt", "hello");
  put(dir / "src/test/java/BTest.java", "class BTest {}");
  put(dir / ".git/config", "ignored");
  put(dir / ".git/Hidden.java", "class Hidden {}");
  auto result = filter::filter_tree(dir.path());
  EXPECT_EQ(result.stats.get("kept"), 1);
  EXPECT_EQ(result.stats.get("not-java-ext"), 1);
  EXPECT_EQ(result.stats.get("test-file"), 1);
  EXPECT_EQ(result.stats.total(), 3);
  ASSERT_EQ(result.records.size(), 3u);
  EXPECT_EQ(result.records[0].relative_path, "notes.txt");
  EXPECT_EQ(result.records[1].relative_path, "src/A.java");
  EXPECT_EQ(result.records[2].relative_path, "src/test/java/BTest.java");
}

TEST(FilterTree, OnlyModuleInfo) {
  cam::testing::TempDir dir;
  put(dir / "module-info.java", "module m {}");
  auto result = filter::filter_tree(dir.path());
  EXPECT_EQ(result.stats.get("forbidden-name"), 1);
  EXPECT_EQ(result.stats.total(), 1);
}

TEST(FilterTree, SymlinksNotFollowed) {
  cam::testing::TempDir dir;
  put(dir / "real/A.java", "class A {}");
  std::filesystem::create_directory_symlink(dir / "real", dir / "loop");
  std::filesystem::create_symlink(dir / "real/A.java", dir / "B.java");
  auto result = filter::filter_tree(dir.path());
  EXPECT_EQ(result.stats.total(), 1);
  EXPECT_EQ(result.records.at(0).relative_path, "real/A.java");
}

TEST(FilterTree, ParallelMatchesSerial) {
  cam::testing::TempDir dir;
  for (int i = 0; i < 40; ++i) {
    put(dir / ("p" + std::to_string(i % 3) + "/C" + std::to_string(i) + ".java"),
        i % 7 == 0 ? "class C" + std::to_string(i) + " {" : "class C" + std::to_string(i) + " {}");
  }
  auto serial = filter::filter_tree(dir.path(), "o/r", 1);
  auto parallel = filter::filter_tree(dir.path(), "o/r", 8);
  ASSERT_EQ(serial.records.size(), parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    EXPECT_EQ(serial.records[i].relative_path, parallel.records[i].relative_path);
    EXPECT_EQ(serial.records[i].reject, parallel.records[i].reject);
  }
  EXPECT_EQ(serial.stats.counts, parallel.stats.counts);
  EXPECT_EQ(serial.stats.get("unparseable"), 6);
}

TEST(FilterTree, MissingRootThrows) {
  EXPECT_THROW(filter::filter_tree("/nonexistent/cam/root"), std::filesystem::filesystem_error);
}
