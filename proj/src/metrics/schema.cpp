#include "cam/metrics/schema.hpp"

#include "cam/util/text.hpp"

namespace cam::metrics {

const std::array<ColumnDef, kMetricCount>& columns() {
  static const std::array<ColumnDef, kMetricCount> kColumns = {{
      {"loc", "code", false, true,
       "Physical lines in the class region. Top-level classes partition their file: the first class also owns "
       "the package and import header, the last owns lines after its closing brace. A trailing newline does not "
       "open a line."},
      {"kloc", "code", true, false, "loc / 1000."},
      {"blanks", "code", false, true, "Lines of the region holding only whitespace."},
      {"comments", "code", false, true, "Lines of the region holding comment text and no code token."},
      {"ncss", "code", true, true,
       "Non-commenting source statements: the type header (anonymous classes excluded), each field declaration "
       "group, each method or constructor header, and each statement or flow header (if, else, for, while, do, "
       "switch, case, default, try, catch, finally, return, break, continue, throw, assert, expression and local "
       "declaration statements), with `else if` counting two. The first class of a file also counts the package "
       "declaration and each import. Nested and anonymous classes are folded in."},
      {"cyclomatic", "code", true, true,
       "Sum over every method and constructor, nested and anonymous classes included, of 1 + decision points "
       "(if, for, foreach, while, do, case label other than default, catch clause, ?:, &&, ||). Lambdas count "
       "toward their enclosing method. A class without methods scores 0."},
      {"cognitive", "code", true, true,
       "Sum over all methods, nested classes included: +1 plus the nesting depth for if, switch, for, foreach, "
       "while, do and catch; +1 for else if, else, ?: and labeled break/continue; +1 for each change of operator "
       "inside a run of && and ||. Lambdas and nested class bodies raise the nesting depth without scoring."},
      {"halstead_n1", "code", false, true,
       "Distinct operators in the region's tokens. Operators are keywords other than class, interface, enum, "
       "package and import, operator tokens and separators. Comments are ignored. Distinctness is by spelling."},
      {"halstead_n2", "code", false, true, "Distinct operands: identifiers and literals, including true, false and null."},
      {"halstead_N1", "code", false, true, "Total operator occurrences."},
      {"halstead_N2", "code", false, true, "Total operand occurrences."},
      {"halstead_volume", "code", true, false, "N * log2(n) with N = N1 + N2 and n = n1 + n2; empty when n = 0."},
      {"halstead_difficulty", "code", false, false, "(n1 / 2) * (N2 / n2); empty when n2 = 0."},
      {"halstead_effort", "code", true, false, "difficulty * volume; empty when either is empty."},
      {"mi", "code", true, false,
       "171 - 5.2 ln(halstead_volume) - 0.23 cyclomatic - 16.2 ln(loc), floored at 0; empty when volume or loc "
       "is 0 or empty."},
      {"attributes", "code", true, true,
       "Non-static fields declared directly in the class (one per declarator). Interface and annotation fields "
       "are implicitly static. Enum constants are not fields."},
      {"static_attributes", "code", false, true, "Static fields declared directly in the class."},
      {"constructors", "code", true, true, "Constructors declared directly in the class."},
      {"methods", "code", true, true,
       "Methods declared directly in the class, constructors excluded. Annotation members count as methods."},
      {"static_methods", "code", true, true, "Static methods declared directly in the class."},
      {"lcom5", "oo", true, false,
       "(m - (1/a) sum_j mu(A_j)) / (m - 1) over non-static, non-constructor methods (m) and non-static fields "
       "(a), where mu(A_j) counts methods that read or write field j by simple name or this.name, unless shadowed "
       "by a local or parameter. Empty when m <= 1 or a = 0."},
      {"nhd", "oo", true, false,
       "1 - 2/(l k (k-1)) sum_j c_j (k - c_j) over all non-constructor methods (k) and distinct parameter types "
       "(l), where c_j counts methods with a parameter of type j. Generic arguments are erased, arrays are "
       "distinct types and varargs count as arrays. Empty when k <= 1 or l = 0."},
      {"tcc", "oo", true, false,
       "Directly connected pairs / all pairs among public, non-static, non-constructor methods with a body; a "
       "pair is connected when both access a common non-static field. Empty when fewer than two such methods."},
      {"lcom1", "oo", true, true,
       "max(P - Q, 0) over pairs of non-static, non-constructor methods, P pairs sharing no field, Q pairs "
       "sharing at least one."},
      {"wmc", "oo", true, true,
       "Sum of per-method cyclomatic complexity over methods and constructors declared directly in the class."},
      {"rfc", "oo", true, true,
       "Distinct names of declared methods and constructors plus distinct simple names invoked (calls and method "
       "references) in their bodies that are not declared names."},
      {"cbo", "oo", true, true,
       "Other classes of the same repository snapshot that this class references (field, parameter, return, "
       "creation, catch, extends, implements types, nested classes included) or that reference this class. "
       "Names resolve through single-type imports, the same package, then wildcard imports."},
      {"dit", "oo", true, true,
       "0 without an extends clause or when extending Object; parent depth + 1 for a parent in the snapshot; 1 "
       "for an unresolvable parent. Classes on an inheritance cycle get 1."},
      {"noc", "oo", true, true, "Classes in the snapshot whose extends clause resolves to this class."},
      {"commits", "git", false, true,
       "Commits reachable from the pinned head that touch the file, following renames."},
      {"authors", "git", false, true, "Distinct lowercased author e-mail addresses among those commits."},
      {"age_days", "git", false, true, "floor((last commit time - first commit time) / 86400 s)."},
      {"churn_added", "git", false, true, "Lines added to the file over those commits."},
      {"churn_deleted", "git", false, true, "Lines deleted from the file over those commits."},
      {"interfaces_implemented", "structure", false, true,
       "Types listed in the implements clause, or in the extends clause of an interface."},
      {"extends_flag", "structure", false, true, "1 when a class declares an extends clause, else 0."},
      {"is_abstract", "structure", false, true, "1 for abstract classes, interfaces and annotation types."},
      {"is_final", "structure", false, true, "1 when declared final."},
      {"public_methods", "structure", false, true, "Methods declared public (interface methods implicitly)."},
      {"private_methods", "structure", false, true, "Methods declared private."},
      {"protected_methods", "structure", false, true, "Methods declared protected."},
      {"default_visibility_methods", "structure", false, true, "Methods with package-private visibility."},
      {"annotations_on_class", "structure", false, true, "Annotations on the type declaration."},
      {"imports_count", "structure", false, true, "Import declarations of the file holding the class."},
      {"lambda_count", "structure", false, true, "Lambda expressions, nested classes and initializers included."},
      {"try_blocks", "structure", false, true, "try statements, nested classes and initializers included."},
      {"catch_blocks", "structure", false, true, "catch clauses, nested classes and initializers included."},
      {"returns_count", "structure", false, true, "return statements, nested classes and initializers included."},
  }};
  return kColumns;
}

std::string definition_hash(const ColumnDef& column) {
  std::string text(column.name);
  text += '\n';
  text += column.definition;
  return util::sha256_hex(text);
}

}  // namespace cam::metrics
