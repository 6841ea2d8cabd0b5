#include <gtest/gtest.h>

#include "../support/git_fixture.hpp"
#include "../support/temp_dir.hpp"
#include "cam/git/history.hpp"

using namespace cam;

namespace {

constexpr long long kDay = 86400;
constexpr long long kT0 = 1577836800;  // 2020-01-01T00:00:00Z

}  // namespace

TEST(GitHistory, SingleCommit) {
  cam::testing::TempDir dir;
  cam::testing::GitFixture repo(dir.path());
  repo.write("A.java", "class A {\n}\n");
  const auto pin = repo.commit("Ann", "ann@example.com", kT0);
  auto h = git::history_for(dir.path(), "A.java", pin);
  EXPECT_EQ(h.commit_count, 1);
  EXPECT_EQ(h.author_count, 1);
  EXPECT_EQ(h.first_commit_time, h.last_commit_time);
  EXPECT_EQ(h.added_lines_total, 2);
  EXPECT_EQ(h.deleted_lines_total, 0);
  EXPECT_EQ(git::derived_columns(h).age_days, 0);
}

TEST(GitHistory, SecondAuthorEdits) {
  cam::testing::TempDir dir;
  cam::testing::GitFixture repo(dir.path());
  repo.write("A.java", "class A {\n}\n");
  repo.commit("Ann", "ann@example.com", kT0);
  repo.write("B.java", "class B {}\n");
  repo.commit("Ann", "ann@example.com", kT0 + kDay);
  repo.write("A.java", "class A {\n  int x;\n}\n");
  const auto pin = repo.commit("Bob", "BOB@Example.com", kT0 + 10 * kDay + kDay / 2);
  auto h = git::history_for(dir.path(), "A.java", pin);
  EXPECT_EQ(h.commit_count, 2);
  EXPECT_EQ(h.author_count, 2);
  EXPECT_EQ(h.added_lines_total, 3);
  EXPECT_EQ(h.deleted_lines_total, 0);
  auto cols = git::derived_columns(h);
  EXPECT_EQ(cols.age_days, 10);
  EXPECT_EQ(cols.commits, 2);
}

TEST(GitHistory, EmailCaseFolded) {
  cam::testing::TempDir dir;
  cam::testing::GitFixture repo(dir.path());
  repo.write("A.java", "a\n");
  repo.commit("Ann", "Ann@Example.com", kT0);
  repo.write("A.java", "b\n");
  const auto pin = repo.commit("Ann B.", "ann@example.COM", kT0 + 5);
  auto h = git::history_for(dir.path(), "A.java", pin);
  EXPECT_EQ(h.commit_count, 2);
  EXPECT_EQ(h.author_count, 1);
  EXPECT_EQ(h.added_lines_total, 2);
  EXPECT_EQ(h.deleted_lines_total, 1);
}

TEST(GitHistory, FollowsRename) {
  cam::testing::TempDir dir;
  cam::testing::GitFixture repo(dir.path());
  const std::string body = "class A {\n  void a() {}\n  void b() {}\n  void c() {}\n}\n";
  repo.write("old/A.java", body);
  repo.commit("Ann", "ann@example.com", kT0);
  repo.move("old/A.java", "src/A.java");
  repo.commit("Ann", "ann@example.com", kT0 + kDay);
  repo.write("src/A.java", "class A {\n  void a() {}\n  void b() {}\n  void c() {}\n  void d() {}\n}\n");
  const auto pin = repo.commit("Cy", "cy@example.com", kT0 + 3 * kDay);
  auto h = git::history_for(dir.path(), "src/A.java", pin);
  EXPECT_EQ(h.commit_count, 3);
  EXPECT_EQ(h.author_count, 2);
  EXPECT_EQ(h.added_lines_total, 6);
  EXPECT_EQ(h.deleted_lines_total, 0);
  EXPECT_EQ(git::derived_columns(h).age_days, 3);
}

TEST(GitHistory, PinnedHistoryIgnoresLaterCommits) {
  cam::testing::TempDir dir;
  cam::testing::GitFixture repo(dir.path());
  repo.write("A.java", "a\n");
  const auto pin = repo.commit("Ann", "ann@example.com", kT0);
  repo.write("A.java", "a\nb\n");
  repo.commit("Bob", "bob@example.com", kT0 + kDay);
  auto h = git::history_for(dir.path(), "A.java", pin);
  EXPECT_EQ(h.commit_count, 1);
  EXPECT_EQ(h.author_count, 1);
}

TEST(GitHistory, UntrackedFile) {
  cam::testing::TempDir dir;
  cam::testing::GitFixture repo(dir.path());
  repo.write("A.java", "a\n");
  const auto pin = repo.commit("Ann", "ann@example.com", kT0);
  EXPECT_THROW(git::history_for(dir.path(), "Missing.java", pin), git::UntrackedFile);
}

TEST(GitHistory, DerivedColumnsArithmetic) {
  git::FileHistory h;
  h.commit_count = 4;
  h.author_count = 2;
  h.first_commit_time = kT0;
  h.last_commit_time = kT0 + 10 * kDay + 12 * 3600;
  h.added_lines_total = 30;
  h.deleted_lines_total = 7;
  auto c = git::derived_columns(h);
  EXPECT_EQ(c.age_days, 10);
  EXPECT_EQ(c.churn_added, 30);
  EXPECT_EQ(c.churn_deleted, 7);
  EXPECT_EQ(c.authors, 2);
}
