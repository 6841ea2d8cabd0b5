#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace cam::metrics {

inline constexpr std::size_t kMetricCount = 48;

enum Column : std::size_t {
  kLoc,
  kKloc,
  kBlanks,
  kComments,
  kNcss,
  kCyclomatic,
  kCognitive,
  kHalsteadN1Distinct,
  kHalsteadN2Distinct,
  kHalsteadN1Total,
  kHalsteadN2Total,
  kHalsteadVolume,
  kHalsteadDifficulty,
  kHalsteadEffort,
  kMi,
  kAttributes,
  kStaticAttributes,
  kConstructors,
  kMethods,
  kStaticMethods,
  kLcom5,
  kNhd,
  kTcc,
  kLcom1,
  kWmc,
  kRfc,
  kCbo,
  kDit,
  kNoc,
  kCommits,
  kAuthors,
  kAgeDays,
  kChurnAdded,
  kChurnDeleted,
  kInterfacesImplemented,
  kExtendsFlag,
  kIsAbstract,
  kIsFinal,
  kPublicMethods,
  kPrivateMethods,
  kProtectedMethods,
  kDefaultVisibilityMethods,
  kAnnotationsOnClass,
  kImportsCount,
  kLambdaCount,
  kTryBlocks,
  kCatchBlocks,
  kReturnsCount,
};

struct ColumnDef {
  std::string_view name;
  std::string_view group;   // code, oo, git, structure
  bool core;                // named in the original study; otherwise an extension
  bool integer;
  std::string_view definition;
};

const std::array<ColumnDef, kMetricCount>& columns();

/// SHA-256 over the column name and its definition text.
std::string definition_hash(const ColumnDef& column);

using MetricVector = std::array<double, kMetricCount>;

}  // namespace cam::metrics
