#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cam::java {

enum class TypeKind : std::uint8_t { Class, Interface, Enum, Annotation };

enum Modifier : std::uint32_t {
  kPublic = 1u << 0,
  kProtected = 1u << 1,
  kPrivate = 1u << 2,
  kStatic = 1u << 3,
  kAbstract = 1u << 4,
  kFinal = 1u << 5,
  kNative = 1u << 6,
  kSynchronized = 1u << 7,
  kTransient = 1u << 8,
  kVolatile = 1u << 9,
  kStrictfp = 1u << 10,
  kDefault = 1u << 11,
};

enum class Visibility : std::uint8_t { Public, Protected, Private, Package };

/// Node kinds of the control-structure tree kept for each body. Only
/// constructs that matter for complexity and statement counting appear;
/// plain expressions are not represented.
enum class NodeKind : std::uint8_t {
  Block,          // a body root or a nested { ... }
  Statement,      // expression statement, local declaration, throw, assert
  If,
  ElseIf,
  Else,
  For,
  ForEach,
  While,
  Do,
  Switch,
  CaseLabel,
  DefaultLabel,
  Try,
  Catch,
  Finally,
  Synchronized,
  Labeled,
  Return,
  Break,
  Continue,
  LabeledJump,    // break/continue with a label
  Lambda,
  Conditional,    // ?:
  LogicalChain,   // maximal run of && / || at one parenthesis level
  LogicalAnd,
  LogicalOr,
  LocalClass,     // header of a local class declaration
  FieldInit,      // root of a field initializer expression
};

struct StatementTree {
  NodeKind kind = NodeKind::Block;
  int nesting_depth = 0;
  std::vector<StatementTree> children;
};

enum class DecisionKind : std::uint8_t {
  If,
  For,
  ForEach,
  While,
  Do,
  Case,
  Catch,
  Conditional,
  LogicalAnd,
  LogicalOr,
};

/// Half-open range of indices into the file's full token vector
/// (comments included).
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct FieldModel {
  std::string name;
  std::string declared_type_name;
  bool is_static = false;
  /// Index of the declaration statement inside its class; declarators of
  /// `int a, b;` share a group.
  std::size_t group = 0;
};

struct MethodModel {
  std::string name;
  bool is_constructor = false;
  bool is_static = false;
  bool is_public = false;
  bool is_abstract = false;
  Visibility visibility = Visibility::Package;
  std::vector<std::string> parameter_type_names;
  std::optional<std::string> return_type_name;  // absent for void and constructors
  std::optional<StatementTree> body;
  std::set<std::string> accessed_field_names;
  std::set<std::string> invoked_method_names;
  std::map<DecisionKind, int> decision_tokens;
  std::optional<TokenSpan> body_tokens;
};

struct ClassModel {
  std::string name;
  TypeKind kind = TypeKind::Class;
  bool is_anonymous = false;
  bool is_local = false;
  std::optional<std::string> extends_name;
  std::vector<std::string> implements_names;
  std::uint32_t modifiers = 0;
  int annotation_count = 0;
  std::vector<FieldModel> fields;
  std::size_t field_groups = 0;
  std::vector<MethodModel> methods;
  std::vector<ClassModel> nested;
  std::set<std::string> referenced_type_names;
  /// Initializer blocks and field initializer expressions.
  std::vector<StatementTree> initializers;
  int enum_constant_count = 0;
  /// Nesting depth at which this class's method bodies start.
  int base_nesting = 0;
  TokenSpan tokens;
  std::uint32_t first_line = 0;
  std::uint32_t last_line = 0;

  bool has(Modifier m) const { return (modifiers & m) != 0; }
};

struct ImportDecl {
  std::string name;
  bool is_static = false;
  bool is_wildcard = false;
};

struct CompilationUnit {
  std::optional<std::string> package_name;
  std::vector<ImportDecl> imports;
  std::vector<ClassModel> types;
};

}  // namespace cam::java
