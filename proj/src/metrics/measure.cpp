#include "cam/metrics/measure.hpp"

#include <algorithm>
#include <limits>
#include <span>
#include <tuple>

#include "cam/metrics/code_metrics.hpp"
#include "cam/metrics/oo_metrics.hpp"
#include "cam/util/parallel.hpp"

namespace cam::metrics {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

bool row_less(const ClassRow& a, const ClassRow& b) {
  return std::tie(a.repo, a.path, a.class_name) < std::tie(b.repo, b.path, b.class_name);
}

void set_git_columns(MetricVector& v, const git::GitColumns& c) {
  v[kCommits] = static_cast<double>(c.commits);
  v[kAuthors] = static_cast<double>(c.authors);
  v[kAgeDays] = static_cast<double>(c.age_days);
  v[kChurnAdded] = static_cast<double>(c.churn_added);
  v[kChurnDeleted] = static_cast<double>(c.churn_deleted);
}

std::vector<ClassRow> measure_file(const SourceFile& file, const std::string& repo) {
  const auto& parsed = *file.parsed;
  const auto& unit = parsed.unit;
  const auto regions = partition_regions(parsed);
  const std::span<const java::Token> all(parsed.tokens.tokens);
  std::vector<ClassRow> rows;
  for (std::size_t i = 0; i < unit.types.size(); ++i) {
    const auto& cls = unit.types[i];
    const auto& region = regions[i];
    ClassRow row;
    row.repo = repo;
    row.path = file.path;
    row.class_name = cls.name;
    auto& v = row.values;
    v.fill(kNaN);

    const auto lines = line_counts(parsed.tokens, file.text, region.first_line, region.last_line);
    v[kLoc] = lines.loc;
    v[kKloc] = lines.kloc;
    v[kBlanks] = lines.blanks;
    v[kComments] = lines.comments;
    int statements = ncss(cls);
    if (region.owns_header) {
      statements += (unit.package_name ? 1 : 0) + static_cast<int>(unit.imports.size());
    }
    v[kNcss] = statements;
    const int cc = class_cyclomatic(cls);
    v[kCyclomatic] = cc;
    v[kCognitive] = cognitive(cls);

    const auto h = halstead(all.subspan(region.tokens.begin, region.tokens.end - region.tokens.begin));
    v[kHalsteadN1Distinct] = static_cast<double>(h.counts.n1);
    v[kHalsteadN2Distinct] = static_cast<double>(h.counts.n2);
    v[kHalsteadN1Total] = static_cast<double>(h.counts.N1);
    v[kHalsteadN2Total] = static_cast<double>(h.counts.N2);
    v[kHalsteadVolume] = h.volume;
    v[kHalsteadDifficulty] = h.difficulty;
    v[kHalsteadEffort] = h.effort;
    v[kMi] = maintainability_index(h.volume, cc, lines.loc);

    const auto members = member_counts(cls);
    v[kAttributes] = members.attributes;
    v[kStaticAttributes] = members.static_attributes;
    v[kConstructors] = members.constructors;
    v[kMethods] = members.methods;
    v[kStaticMethods] = members.static_methods;

    const auto access = access_matrix(cls);
    v[kLcom5] = lcom5(access);
    v[kNhd] = nhd(param_type_matrix(cls));
    v[kTcc] = tcc(access);
    v[kLcom1] = lcom1(access);
    v[kWmc] = wmc(cls);
    v[kRfc] = rfc(cls);

    const auto s = structural_counts(cls);
    v[kInterfacesImplemented] = s.interfaces_implemented;
    v[kExtendsFlag] = s.extends_flag;
    v[kIsAbstract] = s.is_abstract;
    v[kIsFinal] = s.is_final;
    v[kPublicMethods] = s.public_methods;
    v[kPrivateMethods] = s.private_methods;
    v[kProtectedMethods] = s.protected_methods;
    v[kDefaultVisibilityMethods] = s.default_visibility_methods;
    v[kAnnotationsOnClass] = s.annotations_on_class;
    v[kImportsCount] = static_cast<double>(unit.imports.size());
    v[kLambdaCount] = s.lambda_count;
    v[kTryBlocks] = s.try_blocks;
    v[kCatchBlocks] = s.catch_blocks;
    v[kReturnsCount] = s.returns_count;
    rows.push_back(std::move(row));
  }
  return rows;
}

RepoMeasurement measure_repo(const std::vector<SourceFile>& input, const std::string& repo, const GitLookup& git,
                             std::size_t jobs) {
  std::vector<const SourceFile*> files;
  for (const auto& f : input) files.push_back(&f);
  std::sort(files.begin(), files.end(), [](const SourceFile* a, const SourceFile* b) { return a->path < b->path; });

  RepoMeasurement out;
  // History lookups run serially: one git process per repository at a time.
  std::vector<std::optional<git::GitColumns>> history(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    history[i] = git(files[i]->path);
    if (!history[i]) out.skipped.push_back(files[i]->path);
  }

  std::vector<std::vector<ClassRow>> per_file(files.size());
  util::parallel_for(files.size(), jobs, [&](std::size_t i) {
    if (history[i]) per_file[i] = measure_file(*files[i], repo);
  });

  ClassGraph graph;
  std::vector<std::pair<std::size_t, std::size_t>> where;  // (file, class) per graph id
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!history[i]) continue;
    const auto& unit = files[i]->parsed->unit;
    for (std::size_t c = 0; c < unit.types.size(); ++c) {
      graph.add(files[i]->path, unit, unit.types[c]);
      where.emplace_back(i, c);
    }
  }
  graph.finalize();
  for (ClassGraph::Id id = 0; id < graph.size(); ++id) {
    auto& row = per_file[where[id].first][where[id].second];
    row.values[kCbo] = graph.cbo(id);
    row.values[kDit] = graph.dit(id);
    row.values[kNoc] = graph.noc(id);
    if (graph.in_cycle(id)) out.dit_cycles.push_back(row.path + ":" + row.class_name);
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    for (auto& row : per_file[i]) {
      set_git_columns(row.values, *history[i]);
      out.rows.push_back(std::move(row));
    }
  }
  std::sort(out.rows.begin(), out.rows.end(), row_less);
  return out;
}

}  // namespace cam::metrics
