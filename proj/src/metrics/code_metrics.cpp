#include "cam/metrics/code_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace cam::metrics {

using java::ClassModel;
using java::MethodModel;
using java::NodeKind;
using java::StatementTree;
using java::Token;
using java::TokenKind;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum LineClass : unsigned char { kBlank = 0, kComment = 1, kCode = 2 };

std::vector<unsigned char> classify_lines(const java::TokenList& tokens, int total) {
  std::vector<unsigned char> lines(static_cast<std::size_t>(total) + 1, kBlank);
  for (const Token& t : tokens.tokens) {
    const unsigned char mark = t.is_comment() ? kComment : kCode;
    for (auto l = t.line; l <= t.end_line && l <= static_cast<std::uint32_t>(total); ++l) {
      lines[l] = std::max(lines[l], mark);
    }
  }
  return lines;
}

int statement_count(const StatementTree& node) {
  int n = 0;
  switch (node.kind) {
    case NodeKind::Statement:
    case NodeKind::Return:
    case NodeKind::Break:
    case NodeKind::Continue:
    case NodeKind::LabeledJump:
    case NodeKind::If:
    case NodeKind::Else:
    case NodeKind::For:
    case NodeKind::ForEach:
    case NodeKind::While:
    case NodeKind::Do:
    case NodeKind::Switch:
    case NodeKind::CaseLabel:
    case NodeKind::DefaultLabel:
    case NodeKind::Try:
    case NodeKind::Catch:
    case NodeKind::Finally: n = 1; break;
    case NodeKind::ElseIf: n = 2; break;  // "else" + "if"
    default: break;
  }
  for (const auto& child : node.children) n += statement_count(child);
  return n;
}

int cognitive_walk(const StatementTree& node) {
  int score = 0;
  switch (node.kind) {
    case NodeKind::If:
    case NodeKind::Switch:
    case NodeKind::For:
    case NodeKind::ForEach:
    case NodeKind::While:
    case NodeKind::Do:
    case NodeKind::Catch: score += 1 + node.nesting_depth; break;
    case NodeKind::ElseIf:
    case NodeKind::Else:
    case NodeKind::Conditional:
    case NodeKind::LabeledJump: score += 1; break;
    case NodeKind::LogicalChain:
      for (std::size_t i = 1; i < node.children.size(); ++i) {
        if (node.children[i].kind != node.children[i - 1].kind) ++score;
      }
      break;
    default: break;
  }
  for (const auto& child : node.children) score += cognitive_walk(child);
  return score;
}

void count_kinds(const StatementTree& node, StructuralCounts& out) {
  switch (node.kind) {
    case NodeKind::Lambda: ++out.lambda_count; break;
    case NodeKind::Try: ++out.try_blocks; break;
    case NodeKind::Catch: ++out.catch_blocks; break;
    case NodeKind::Return: ++out.returns_count; break;
    default: break;
  }
  for (const auto& child : node.children) count_kinds(child, out);
}

void count_kinds(const ClassModel& cls, StructuralCounts& out) {
  for (const auto& m : cls.methods) {
    if (m.body) count_kinds(*m.body, out);
  }
  for (const auto& init : cls.initializers) count_kinds(init, out);
  for (const auto& inner : cls.nested) count_kinds(inner, out);
}

}  // namespace

int physical_lines(std::string_view text) {
  if (text.empty()) return 0;
  auto n = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  return text.back() == '\n' ? n : n + 1;
}

std::vector<ClassRegion> partition_regions(const java::ParsedFile& file) {
  std::vector<ClassRegion> regions;
  const auto& types = file.unit.types;
  const std::size_t all = file.tokens.tokens.size();
  int total_lines = 0;
  if (!types.empty()) {
    // Line count is derived from the token stream plus trailing whitespace.
    const std::string text = file.tokens.reconstruct();
    total_lines = physical_lines(text);
  }
  for (std::size_t i = 0; i < types.size(); ++i) {
    ClassRegion r;
    r.owns_header = i == 0;
    r.tokens.begin = i == 0 ? 0 : types[i - 1].tokens.end;
    r.tokens.end = i + 1 == types.size() ? all : types[i].tokens.end;
    r.first_line = i == 0 ? 1 : static_cast<int>(types[i - 1].last_line) + 1;
    r.last_line = i + 1 == types.size() ? total_lines : static_cast<int>(types[i].last_line);
    regions.push_back(r);
  }
  return regions;
}

LineCounts line_counts(const java::TokenList& tokens, std::string_view text, int first_line,
                       int last_line) {
  LineCounts out;
  const int total = physical_lines(text);
  last_line = std::min(last_line, total);
  first_line = std::max(first_line, 1);
  if (first_line > last_line) return out;
  const auto classes = classify_lines(tokens, total);
  for (int l = first_line; l <= last_line; ++l) {
    ++out.loc;
    if (classes[static_cast<std::size_t>(l)] == kBlank) ++out.blanks;
    if (classes[static_cast<std::size_t>(l)] == kComment) ++out.comments;
  }
  out.kloc = out.loc / 1000.0;
  return out;
}

int ncss(const ClassModel& cls) {
  int n = cls.is_anonymous ? 0 : 1;
  n += static_cast<int>(cls.field_groups);
  for (const auto& m : cls.methods) {
    n += 1;
    if (m.body) n += statement_count(*m.body);
  }
  for (const auto& init : cls.initializers) n += statement_count(init);
  for (const auto& inner : cls.nested) n += ncss(inner);
  return n;
}

LocMetrics loc_metrics(const java::ParsedFile& file, std::string_view text) {
  LocMetrics out;
  LineCounts lines = line_counts(file.tokens, text, 1, physical_lines(text));
  out.loc = lines.loc;
  out.kloc = lines.kloc;
  out.blanks = lines.blanks;
  out.comments = lines.comments;
  out.ncss = (file.unit.package_name ? 1 : 0) + static_cast<int>(file.unit.imports.size());
  for (const auto& cls : file.unit.types) out.ncss += ncss(cls);
  return out;
}

LocMetrics loc_metrics(std::string_view text) { return loc_metrics(java::parse_file(text), text); }

int cyclomatic(const MethodModel& method) {
  int cc = 1;
  for (const auto& [kind, count] : method.decision_tokens) cc += count;
  return cc;
}

int class_cyclomatic(const ClassModel& cls) {
  int total = 0;
  for (const auto& m : cls.methods) total += cyclomatic(m);
  for (const auto& inner : cls.nested) total += class_cyclomatic(inner);
  return total;
}

int cognitive(const StatementTree& body) { return cognitive_walk(body); }

int cognitive(const MethodModel& method) { return method.body ? cognitive_walk(*method.body) : 0; }

int cognitive(const ClassModel& cls) {
  int total = 0;
  for (const auto& m : cls.methods) total += cognitive(m);
  for (const auto& inner : cls.nested) total += cognitive(inner);
  return total;
}

HalsteadRole halstead_role(const Token& token) {
  switch (token.kind) {
    case TokenKind::CommentLine:
    case TokenKind::CommentBlock: return HalsteadRole::Ignored;
    case TokenKind::Identifier:
    case TokenKind::LiteralInt:
    case TokenKind::LiteralFloat:
    case TokenKind::LiteralString:
    case TokenKind::LiteralChar:
    case TokenKind::LiteralBool:
    case TokenKind::LiteralNull: return HalsteadRole::Operand;
    case TokenKind::Keyword:
      if (token.lexeme == "class" || token.lexeme == "interface" || token.lexeme == "enum" ||
          token.lexeme == "package" || token.lexeme == "import") {
        return HalsteadRole::Ignored;
      }
      return HalsteadRole::Operator;
    case TokenKind::Operator:
    case TokenKind::Separator: return HalsteadRole::Operator;
  }
  return HalsteadRole::Ignored;
}

HalsteadCounts halstead_counts(std::span<const Token> tokens) {
  HalsteadCounts c;
  std::set<std::string_view> operators;
  std::set<std::string_view> operands;
  for (const Token& t : tokens) {
    switch (halstead_role(t)) {
      case HalsteadRole::Operator:
        ++c.N1;
        operators.insert(t.lexeme);
        break;
      case HalsteadRole::Operand:
        ++c.N2;
        operands.insert(t.lexeme);
        break;
      case HalsteadRole::Ignored: break;
    }
  }
  c.n1 = operators.size();
  c.n2 = operands.size();
  return c;
}

HalsteadMetrics halstead(const HalsteadCounts& counts) {
  HalsteadMetrics h;
  h.counts = counts;
  const double n = static_cast<double>(counts.n1 + counts.n2);
  const double N = static_cast<double>(counts.N1 + counts.N2);
  h.volume = n == 0 ? kNaN : N * std::log2(n);
  h.difficulty = counts.n2 == 0 ? kNaN
                                : (static_cast<double>(counts.n1) / 2.0) *
                                      (static_cast<double>(counts.N2) / static_cast<double>(counts.n2));
  h.effort = h.difficulty * h.volume;
  return h;
}

HalsteadMetrics halstead(std::span<const Token> tokens) { return halstead(halstead_counts(tokens)); }

double maintainability_index(double volume, double class_cc, double loc) {
  if (std::isnan(volume) || std::isnan(loc) || std::isnan(class_cc) || volume <= 0 || loc <= 0) {
    return kNaN;
  }
  const double mi = 171.0 - 5.2 * std::log(volume) - 0.23 * class_cc - 16.2 * std::log(loc);
  return std::max(mi, 0.0);
}

MemberCounts member_counts(const ClassModel& cls) {
  MemberCounts c;
  for (const auto& f : cls.fields) {
    if (f.is_static) {
      ++c.static_attributes;
    } else {
      ++c.attributes;
    }
  }
  for (const auto& m : cls.methods) {
    if (m.is_constructor) {
      ++c.constructors;
    } else {
      ++c.methods;
      if (m.is_static) ++c.static_methods;
    }
  }
  return c;
}

StructuralCounts structural_counts(const ClassModel& cls) {
  StructuralCounts s;
  s.interfaces_implemented = static_cast<int>(cls.implements_names.size());
  s.extends_flag = cls.extends_name ? 1 : 0;
  s.is_abstract = cls.has(java::kAbstract) || cls.kind == java::TypeKind::Interface ||
                          cls.kind == java::TypeKind::Annotation
                      ? 1
                      : 0;
  s.is_final = cls.has(java::kFinal) ? 1 : 0;
  for (const auto& m : cls.methods) {
    if (m.is_constructor) continue;
    switch (m.visibility) {
      case java::Visibility::Public: ++s.public_methods; break;
      case java::Visibility::Private: ++s.private_methods; break;
      case java::Visibility::Protected: ++s.protected_methods; break;
      case java::Visibility::Package: ++s.default_visibility_methods; break;
    }
  }
  s.annotations_on_class = cls.annotation_count;
  count_kinds(cls, s);
  return s;
}

}  // namespace cam::metrics
