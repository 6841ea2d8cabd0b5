#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cam/java/model.hpp"
#include "cam/java/parser.hpp"
#include "cam/java/token.hpp"

namespace cam::metrics {

struct LineCounts {
  int loc = 0;
  int blanks = 0;
  int comments = 0;  // lines holding comment text and no code
  double kloc = 0.0;
};

struct LocMetrics {
  int loc = 0;
  double kloc = 0.0;
  int blanks = 0;
  int comments = 0;
  int ncss = 0;
};

/// Slice of a file attributed to one top-level class. Top-level classes
/// partition the file: the first one also owns the package/import header,
/// the last one owns everything after its closing brace.
struct ClassRegion {
  java::TokenSpan tokens;
  int first_line = 1;  // 1-based, inclusive
  int last_line = 0;   // inclusive; first_line > last_line means no lines
  bool owns_header = false;
};

std::vector<ClassRegion> partition_regions(const java::ParsedFile& file);

/// Number of physical lines; a trailing newline does not open a new line.
int physical_lines(std::string_view text);

LineCounts line_counts(const java::TokenList& tokens, std::string_view text, int first_line,
                       int last_line);

/// Non-commenting source statements of a class, nested and anonymous
/// classes included.
int ncss(const java::ClassModel& cls);

/// Whole-file size metrics; package and import declarations count one
/// statement each.
LocMetrics loc_metrics(const java::ParsedFile& file, std::string_view text);
LocMetrics loc_metrics(std::string_view text);

int cyclomatic(const java::MethodModel& method);
int class_cyclomatic(const java::ClassModel& cls);

int cognitive(const java::StatementTree& body);
int cognitive(const java::MethodModel& method);
int cognitive(const java::ClassModel& cls);

struct HalsteadCounts {
  std::size_t n1 = 0;  // distinct operators
  std::size_t n2 = 0;  // distinct operands
  std::size_t N1 = 0;  // total operators
  std::size_t N2 = 0;  // total operands
};

struct HalsteadMetrics {
  HalsteadCounts counts;
  double volume = 0.0;
  double difficulty = 0.0;
  double effort = 0.0;
};

enum class HalsteadRole { Operator, Operand, Ignored };

HalsteadRole halstead_role(const java::Token& token);
HalsteadCounts halstead_counts(std::span<const java::Token> tokens);
HalsteadMetrics halstead(const HalsteadCounts& counts);
HalsteadMetrics halstead(std::span<const java::Token> tokens);

/// Classic three-term maintainability index, floored at zero.
double maintainability_index(double volume, double class_cc, double loc);

struct MemberCounts {
  int attributes = 0;
  int static_attributes = 0;
  int constructors = 0;
  int methods = 0;
  int static_methods = 0;
};

MemberCounts member_counts(const java::ClassModel& cls);

struct StructuralCounts {
  int interfaces_implemented = 0;
  int extends_flag = 0;
  int is_abstract = 0;
  int is_final = 0;
  int public_methods = 0;
  int private_methods = 0;
  int protected_methods = 0;
  int default_visibility_methods = 0;
  int annotations_on_class = 0;
  int lambda_count = 0;
  int try_blocks = 0;
  int catch_blocks = 0;
  int returns_count = 0;
};

StructuralCounts structural_counts(const java::ClassModel& cls);

}  // namespace cam::metrics
