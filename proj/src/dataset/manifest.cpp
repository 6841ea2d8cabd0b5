#include "cam/dataset/dataset.hpp"
#include "cam/util/files.hpp"

namespace cam::dataset {

using nlohmann::json;

std::string to_string(RepoStatus status) {
  switch (status) {
    case RepoStatus::Pending: return "pending";
    case RepoStatus::Ok: return "ok";
    case RepoStatus::Failed: return "failed";
  }
  return "pending";
}

namespace {

json stats_json(const filter::FilterStats& stats) {
  json out = json::object();
  out["kept"] = stats.get("kept");
  for (std::size_t i = 0; i <= static_cast<std::size_t>(filter::RejectReason::Unparseable); ++i) {
    const auto code = filter::reason_code(static_cast<filter::RejectReason>(i));
    out[std::string(code)] = stats.get(code);
  }
  return out;
}

}  // namespace

json manifest_json(const RunManifest& m) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["tool_version"] = kToolVersion;
  out["criteria"] = {{"language_tag", m.criteria.language_tag},
                     {"min_stars", m.criteria.min_stars},
                     {"max_stars", m.criteria.max_stars},
                     {"min_size_kb", m.criteria.min_size_kb},
                     {"max_repos", m.criteria.max_repos},
                     {"query", m.criteria.query()}};
  filter::FilterStats global;
  json repos = json::array();
  long long total_rows = 0;
  for (const auto& r : m.repos) {
    json entry = {{"full_name", r.spec.full_name},
                  {"stars", r.spec.stars},
                  {"size_kb", r.spec.size_kb},
                  {"default_branch", r.spec.default_branch},
                  {"head_commit", r.spec.head_commit},
                  {"discovered_at", r.spec.discovered_at},
                  {"status", to_string(r.status)},
                  {"filter_stats", stats_json(r.filter_stats)},
                  {"parse_rejects", r.filter_stats.get("unparseable")},
                  {"rows", r.rows},
                  {"dit_cycles", r.dit_cycles},
                  {"skipped_files", r.skipped_files}};
    if (!r.error.empty()) entry["error"] = r.error;
    repos.push_back(std::move(entry));
    global.merge(r.filter_stats);
    total_rows += r.rows;
  }
  out["repos"] = std::move(repos);
  out["filter_stats"] = stats_json(global);
  out["parse_rejects"] = global.get("unparseable");
  out["rows"] = total_rows;
  json schema = json::array();
  for (const auto& c : metrics::columns()) {
    schema.push_back({{"name", std::string(c.name)},
                      {"group", std::string(c.group)},
                      {"origin", c.core ? "core" : "extension"},
                      {"type", c.integer ? "integer" : "real"},
                      {"definition_sha256", metrics::definition_hash(c)}});
  }
  out["schema"] = std::move(schema);
  out["search_cap_exceeded"] = m.search_cap_exceeded;
  out["started_at"] = m.started_at;
  out["finished_at"] = m.finished_at;
  return out;
}

std::string manifest_text(const RunManifest& manifest) { return manifest_json(manifest).dump() + "\n"; }

void write_manifest(const RunManifest& manifest, const std::filesystem::path& out) {
  util::write_file_atomic(out, manifest_text(manifest));
}

}  // namespace cam::dataset
