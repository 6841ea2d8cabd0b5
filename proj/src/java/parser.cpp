#include "cam/java/parser.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <unordered_set>

namespace cam::java {

SyntaxError::SyntaxError(std::uint32_t line, std::uint32_t column, const std::string& expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                         expected),
      line_(line),
      column_(column),
      expected_(expected) {}

namespace {

constexpr std::array<std::string_view, 8> kPrimitives = {
    "boolean", "byte", "char", "double", "float", "int", "long", "short",
};

bool is_primitive(const Token& t) {
  return t.kind == TokenKind::Keyword &&
         std::find(kPrimitives.begin(), kPrimitives.end(), t.lexeme) != kPrimitives.end();
}

int gt_count(const Token& t) {
  if (t.kind != TokenKind::Operator) return 0;
  if (t.lexeme == ">") return 1;
  if (t.lexeme == ">>") return 2;
  if (t.lexeme == ">>>") return 3;
  return 0;
}

int binary_precedence(const Token& t) {
  if (t.kind == TokenKind::Keyword) return t.lexeme == "instanceof" ? 7 : 0;
  if (t.kind != TokenKind::Operator) return 0;
  const std::string& op = t.lexeme;
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

bool is_assignment(const Token& t) {
  if (t.kind != TokenKind::Operator) return false;
  static const std::unordered_set<std::string> ops = {
      "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
  };
  return ops.contains(t.lexeme);
}

struct TypeName {
  std::string erased;
  std::vector<std::string> mentions;
  bool primitive = false;
};

struct Modifiers {
  std::uint32_t flags = 0;
  int annotations = 0;
};

/// Name-resolution state for one body (method, initializer or lambda host).
struct BodyContext {
  std::vector<std::vector<std::string>> scopes;
  std::set<std::string> field_uses;
  std::set<std::string> invoked;

  bool declares(const std::string& name) const {
    for (const auto& scope : scopes) {
      if (std::find(scope.begin(), scope.end(), name) != scope.end()) return true;
    }
    return false;
  }
  void declare(const std::string& name) {
    if (scopes.empty()) scopes.emplace_back();
    scopes.back().push_back(name);
  }
};

void count_decisions(const StatementTree& node, std::map<DecisionKind, int>& out) {
  switch (node.kind) {
    case NodeKind::If:
    case NodeKind::ElseIf: ++out[DecisionKind::If]; break;
    case NodeKind::For: ++out[DecisionKind::For]; break;
    case NodeKind::ForEach: ++out[DecisionKind::ForEach]; break;
    case NodeKind::While: ++out[DecisionKind::While]; break;
    case NodeKind::Do: ++out[DecisionKind::Do]; break;
    case NodeKind::CaseLabel: ++out[DecisionKind::Case]; break;
    case NodeKind::Catch: ++out[DecisionKind::Catch]; break;
    case NodeKind::Conditional: ++out[DecisionKind::Conditional]; break;
    case NodeKind::LogicalAnd: ++out[DecisionKind::LogicalAnd]; break;
    case NodeKind::LogicalOr: ++out[DecisionKind::LogicalOr]; break;
    default: break;
  }
  for (const auto& child : node.children) count_decisions(child, out);
}

std::string simple_name(const std::string& dotted) {
  auto dot = dotted.rfind('.');
  return dot == std::string::npos ? dotted : dotted.substr(dot + 1);
}

class Parser {
 public:
  explicit Parser(const TokenList& list) : toks_(list.tokens) {
    code_.reserve(toks_.size());
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      if (!toks_[i].is_comment()) code_.push_back(i);
    }
    eof_.kind = TokenKind::Separator;
    if (!toks_.empty()) {
      eof_.line = toks_.back().end_line;
      eof_.column = toks_.back().column + static_cast<std::uint32_t>(toks_.back().lexeme.size());
    }
  }

  CompilationUnit parse_unit();

 private:
  // ---- token access -------------------------------------------------------

  const Token& at(std::size_t p) const { return p < code_.size() ? toks_[code_[p]] : eof_; }
  const Token& cur(std::size_t k = 0) const { return at(pos_ + k); }
  bool eof() const { return pos_ >= code_.size(); }

  bool is_lex(std::size_t p, std::string_view lex) const {
    const Token& t = at(p);
    return p < code_.size() && t.lexeme == lex && !t.is_literal() && t.kind != TokenKind::Identifier;
  }
  bool is(std::string_view lex, std::size_t k = 0) const {
    if (k == 0 && gt_consumed_ > 0) return false;
    return is_lex(pos_ + k, lex);
  }
  bool is_ident_at(std::size_t p) const {
    return p < code_.size() && at(p).kind == TokenKind::Identifier;
  }
  bool is_ident(std::size_t k = 0) const { return gt_consumed_ == 0 && is_ident_at(pos_ + k); }

  std::size_t full_index() const { return pos_ < code_.size() ? code_[pos_] : toks_.size(); }
  std::size_t last_full_index() const { return pos_ == 0 ? 0 : code_[pos_ - 1]; }

  void advance() {
    if (pos_ < code_.size()) ++pos_;
  }

  [[noreturn]] void error(const std::string& expected) const {
    const Token& t = cur();
    throw SyntaxError(t.line, t.column, expected);
  }

  void expect(std::string_view lex) {
    if (!is(lex)) error("'" + std::string(lex) + "'");
    advance();
  }

  std::string ident() {
    if (!is_ident()) error("identifier");
    std::string name = cur().lexeme;
    advance();
    return name;
  }

  bool at_gt() const {
    int n = gt_count(cur());
    return n > 0 && gt_consumed_ < n;
  }

  void expect_gt() {
    int n = gt_count(cur());
    if (n == 0 || gt_consumed_ >= n) error("'>'");
    if (++gt_consumed_ == n) {
      gt_consumed_ = 0;
      advance();
    }
  }

  // ---- lookahead (pure) ---------------------------------------------------

  std::optional<std::size_t> match_paren(std::size_t p) const {
    int depth = 0;
    for (; p < code_.size(); ++p) {
      if (is_lex(p, "(")) {
        ++depth;
      } else if (is_lex(p, ")")) {
        if (--depth == 0) return p + 1;
      }
    }
    return std::nullopt;
  }

  std::optional<std::size_t> skip_annotation(std::size_t p) const {
    if (!is_lex(p, "@")) return std::nullopt;
    ++p;
    if (!is_ident_at(p)) return std::nullopt;
    ++p;
    while (is_lex(p, ".") && is_ident_at(p + 1)) p += 2;
    if (is_lex(p, "(")) return match_paren(p);
    return p;
  }

  std::optional<std::size_t> skip_type_args(std::size_t p) const {
    if (!is_lex(p, "<")) return std::nullopt;
    int depth = 0;
    for (; p < code_.size(); ++p) {
      const Token& t = at(p);
      if (t.kind == TokenKind::Operator && t.lexeme == "<") {
        ++depth;
      } else if (int n = gt_count(t); n > 0) {
        depth -= n;
        if (depth == 0) return p + 1;
        if (depth < 0) return std::nullopt;
      } else if (t.kind == TokenKind::Identifier || is_primitive(t) || t.lexeme == "." ||
                 t.lexeme == "," || t.lexeme == "?" || t.lexeme == "extends" ||
                 t.lexeme == "super" || t.lexeme == "&" || t.lexeme == "[" || t.lexeme == "]" ||
                 t.lexeme == "@") {
        continue;
      } else {
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::optional<std::size_t> skip_type(std::size_t p) const {
    while (is_lex(p, "@") && !is_lex(p + 1, "interface")) {
      auto q = skip_annotation(p);
      if (!q) return std::nullopt;
      p = *q;
    }
    if (is_primitive(at(p)) && p < code_.size()) {
      ++p;
    } else if (is_ident_at(p)) {
      ++p;
      if (is_lex(p, "<")) {
        auto q = skip_type_args(p);
        if (!q) return std::nullopt;
        p = *q;
      }
      while (is_lex(p, ".") && is_ident_at(p + 1)) {
        p += 2;
        if (is_lex(p, "<")) {
          auto q = skip_type_args(p);
          if (!q) return std::nullopt;
          p = *q;
        }
      }
    } else {
      return std::nullopt;
    }
    while (is_lex(p, "[") && is_lex(p + 1, "]")) p += 2;
    return p;
  }

  bool is_lambda_start() const {
    if (gt_consumed_ > 0) return false;
    if (is_ident() && is("->", 1)) return true;
    if (is("(")) {
      auto q = match_paren(pos_);
      return q && is_lex(*q, "->");
    }
    return false;
  }

  bool is_cast() const {
    if (!is("(")) return false;
    const std::size_t p = pos_ + 1;
    if (is_primitive(at(p)) && p < code_.size()) {
      auto q = skip_type(p);
      return q && is_lex(*q, ")");
    }
    if (!is_ident_at(p) && !is_lex(p, "@")) return false;
    auto q = skip_type(p);
    if (!q) return false;
    while (is_lex(*q, "&")) {
      q = skip_type(*q + 1);
      if (!q) return false;
    }
    if (!is_lex(*q, ")")) return false;
    const std::size_t n = *q + 1;
    if (n >= code_.size()) return false;
    const Token& next = at(n);
    if (next.kind == TokenKind::Identifier || next.is_literal()) return true;
    if (is_primitive(next)) return true;
    if (next.kind == TokenKind::Keyword) {
      return next.lexeme == "this" || next.lexeme == "super" || next.lexeme == "new";
    }
    if (next.kind == TokenKind::Separator) return next.lexeme == "(";
    if (next.kind == TokenKind::Operator) return next.lexeme == "!" || next.lexeme == "~";
    return false;
  }

  bool is_local_var_decl() const {
    if (gt_consumed_ > 0) return false;
    std::size_t p = pos_;
    while (true) {
      if (is_lex(p, "final")) {
        ++p;
      } else if (is_lex(p, "@") && !is_lex(p + 1, "interface")) {
        auto q = skip_annotation(p);
        if (!q) return false;
        p = *q;
      } else {
        break;
      }
    }
    if (!is_ident_at(p) && !(is_primitive(at(p)) && p < code_.size())) return false;
    auto q = skip_type(p);
    if (!q || !is_ident_at(*q)) return false;
    const std::size_t n = *q + 1;
    return is_lex(n, "=") || is_lex(n, ";") || is_lex(n, ",") || is_lex(n, "[") ||
           is_lex(n, ":");
  }

  bool local_class_ahead() const {
    std::size_t p = pos_;
    while (true) {
      if (is_lex(p, "final") || is_lex(p, "abstract") || is_lex(p, "strictfp") ||
          is_lex(p, "static")) {
        ++p;
      } else if (is_lex(p, "@") && !is_lex(p + 1, "interface")) {
        auto q = skip_annotation(p);
        if (!q) return false;
        p = *q;
      } else {
        break;
      }
    }
    if (is_lex(p, "interface") || is_lex(p, "enum")) {
      throw SyntaxError(at(p).line, at(p).column, "statement (local interfaces and enums are not Java 8)");
    }
    return is_lex(p, "class");
  }

  // ---- context helpers ----------------------------------------------------

  struct Saved {
    ClassModel* cls;
    BodyContext* body;
    StatementTree* node;
    int depth;
  };
  Saved save() const { return {cls_, body_, node_, depth_}; }
  void restore(const Saved& s) {
    cls_ = s.cls;
    body_ = s.body;
    node_ = s.node;
    depth_ = s.depth;
  }

  StatementTree& add_node(NodeKind kind) {
    if (node_ == nullptr) {
      scratch_.children.clear();
      node_ = &scratch_;
    }
    StatementTree& n = node_->children.emplace_back();
    n.kind = kind;
    n.nesting_depth = depth_;
    return n;
  }

  void note_field_use(const std::string& name) {
    if (body_ != nullptr && !body_->declares(name)) body_->field_uses.insert(name);
  }
  void note_this_field(const std::string& name) {
    if (body_ != nullptr) body_->field_uses.insert(name);
  }
  void note_invocation(const std::string& name) {
    if (body_ != nullptr) body_->invoked.insert(name);
  }
  void declare(const std::string& name) {
    if (body_ != nullptr) body_->declare(name);
  }
  void push_scope() {
    if (body_ != nullptr) body_->scopes.emplace_back();
  }
  void pop_scope() {
    if (body_ != nullptr && !body_->scopes.empty()) body_->scopes.pop_back();
  }
  void reference(const std::vector<std::string>& names) {
    if (cls_ == nullptr) return;
    for (const auto& n : names) cls_->referenced_type_names.insert(n);
  }

  // ---- declarations -------------------------------------------------------

  std::string qualified_name() {
    std::string name = ident();
    while (is(".") && is_ident(1)) {
      advance();
      name += "." + ident();
    }
    return name;
  }

  void parse_annotation() {
    Saved s = save();
    StatementTree scratch;
    body_ = nullptr;
    node_ = &scratch;
    expect("@");
    qualified_name();
    if (is("(")) {
      advance();
      if (!is(")")) {
        if (is_ident() && is("=", 1)) {
          while (true) {
            ident();
            expect("=");
            parse_element_value();
            if (!is(",")) break;
            advance();
          }
        } else {
          parse_element_value();
        }
      }
      expect(")");
    }
    restore(s);
  }

  void parse_element_value() {
    if (is("@")) {
      parse_annotation();
    } else if (is("{")) {
      advance();
      while (!is("}")) {
        parse_element_value();
        if (!is(",")) break;
        advance();
      }
      expect("}");
    } else {
      parse_conditional();
    }
  }

  Modifiers parse_modifiers(bool allow_default) {
    Modifiers m;
    while (true) {
      if (is("@") && !is("interface", 1)) {
        parse_annotation();
        ++m.annotations;
        continue;
      }
      const Token& t = cur();
      if (t.kind != TokenKind::Keyword || gt_consumed_ > 0) break;
      const std::string& w = t.lexeme;
      std::uint32_t flag = 0;
      if (w == "public") flag = kPublic;
      else if (w == "protected") flag = kProtected;
      else if (w == "private") flag = kPrivate;
      else if (w == "static") flag = kStatic;
      else if (w == "abstract") flag = kAbstract;
      else if (w == "final") flag = kFinal;
      else if (w == "native") flag = kNative;
      else if (w == "synchronized") flag = kSynchronized;
      else if (w == "transient") flag = kTransient;
      else if (w == "volatile") flag = kVolatile;
      else if (w == "strictfp") flag = kStrictfp;
      else if (w == "default" && allow_default && !is(":", 1)) flag = kDefault;
      if (flag == 0) break;
      m.flags |= flag;
      advance();
    }
    return m;
  }

  void parse_type_args(std::vector<std::string>& mentions) {
    expect("<");
    if (at_gt()) {
      expect_gt();  // diamond
      return;
    }
    while (true) {
      while (is("@")) parse_annotation();
      if (is("?")) {
        advance();
        if (is("extends") || is("super")) {
          advance();
          TypeName bound = parse_type();
          mentions.insert(mentions.end(), bound.mentions.begin(), bound.mentions.end());
        }
      } else {
        TypeName arg = parse_type();
        mentions.insert(mentions.end(), arg.mentions.begin(), arg.mentions.end());
      }
      if (!is(",")) break;
      advance();
    }
    expect_gt();
  }

  void parse_type_params() {
    expect("<");
    while (true) {
      while (is("@")) parse_annotation();
      ident();
      if (is("extends")) {
        advance();
        parse_type();
        while (is("&")) {
          advance();
          parse_type();
        }
      }
      if (!is(",")) break;
      advance();
    }
    expect_gt();
  }

  TypeName parse_type() {
    while (is("@") && !is("interface", 1)) parse_annotation();
    TypeName t;
    if (gt_consumed_ == 0 && is_primitive(cur()) && !eof()) {
      t.erased = cur().lexeme;
      t.primitive = true;
      advance();
    } else {
      t.erased = ident();
      if (is("<")) parse_type_args(t.mentions);
      while (is(".") && (is_ident(1) || is("@", 1))) {
        advance();
        while (is("@")) parse_annotation();
        t.erased += "." + ident();
        if (is("<")) parse_type_args(t.mentions);
      }
      t.mentions.push_back(t.erased);
    }
    while (is("[") && is("]", 1)) {
      advance();
      advance();
      t.erased += "[]";
    }
    return t;
  }

  void reject_var(const TypeName& t) {
    if (t.erased == "var") error("explicit type ('var' is not Java 8)");
  }

  std::vector<std::string> type_list() {
    std::vector<std::string> names;
    while (true) {
      names.push_back(parse_type().erased);
      if (!is(",")) break;
      advance();
    }
    return names;
  }

  ClassModel parse_type_decl(const Modifiers& mods, std::size_t start, int base_nesting) {
    ClassModel c;
    c.modifiers = mods.flags;
    c.annotation_count = mods.annotations;
    c.base_nesting = base_nesting;
    c.tokens.begin = start;
    c.first_line = start < toks_.size() ? toks_[start].line : cur().line;
    if (is("class")) {
      advance();
      c.kind = TypeKind::Class;
      c.name = ident();
      if (is("<")) parse_type_params();
      if (is("extends")) {
        advance();
        c.extends_name = parse_type().erased;
      }
      if (is("implements")) {
        advance();
        c.implements_names = type_list();
      }
    } else if (is("interface")) {
      advance();
      c.kind = TypeKind::Interface;
      c.name = ident();
      if (is("<")) parse_type_params();
      if (is("extends")) {
        advance();
        c.implements_names = type_list();
      }
    } else if (is("enum")) {
      advance();
      c.kind = TypeKind::Enum;
      c.name = ident();
      if (is("implements")) {
        advance();
        c.implements_names = type_list();
      }
    } else if (is("@") && is("interface", 1)) {
      advance();
      advance();
      c.kind = TypeKind::Annotation;
      c.name = ident();
    } else {
      error("class, interface, enum or @interface");
    }
    parse_class_body(c);
    c.tokens.end = last_full_index() + 1;
    c.last_line = toks_[last_full_index()].line;
    return c;
  }

  void parse_class_body(ClassModel& c) {
    Saved s = save();
    cls_ = &c;
    body_ = nullptr;
    node_ = nullptr;
    depth_ = c.base_nesting;
    expect("{");
    if (c.kind == TypeKind::Enum) parse_enum_constants(c);
    while (!is("}")) {
      if (eof()) error("'}'");
      parse_member(c);
    }
    expect("}");
    std::set<std::string> field_names;
    for (const auto& f : c.fields) field_names.insert(f.name);
    for (auto& m : c.methods) {
      std::erase_if(m.accessed_field_names,
                    [&](const std::string& n) { return !field_names.contains(n); });
    }
    restore(s);
  }

  void parse_enum_constants(ClassModel& c) {
    while (!is(";") && !is("}")) {
      while (is("@")) parse_annotation();
      const std::size_t start = full_index();
      std::string name = ident();
      ++c.enum_constant_count;
      if (is("(")) {
        parse_in_initializer(c, [this] { parse_arguments(); });
      }
      if (is("{")) {
        ClassModel anon;
        anon.name = name;
        anon.is_anonymous = true;
        anon.base_nesting = c.base_nesting + 1;
        anon.tokens.begin = start;
        anon.first_line = cur().line;
        parse_class_body(anon);
        anon.tokens.end = last_full_index() + 1;
        anon.last_line = toks_[last_full_index()].line;
        c.nested.push_back(std::move(anon));
      }
      if (!is(",")) break;
      advance();
    }
    if (is(";")) advance();
  }

  template <typename F>
  void parse_in_initializer(ClassModel& c, F&& body, NodeKind root_kind = NodeKind::FieldInit) {
    Saved s = save();
    BodyContext ctx;
    ctx.scopes.emplace_back();
    StatementTree root;
    root.kind = root_kind;
    root.nesting_depth = c.base_nesting;
    body_ = &ctx;
    node_ = &root;
    depth_ = c.base_nesting;
    body();
    restore(s);
    if (root_kind != NodeKind::FieldInit || !root.children.empty()) {
      c.initializers.push_back(std::move(root));
    }
  }

  void parse_member(ClassModel& c) {
    if (is(";")) {
      advance();
      return;
    }
    const std::size_t start = full_index();
    if (is("{") || (is("static") && is("{", 1))) {
      if (is("static")) advance();
      parse_in_initializer(c, [this] { parse_block_contents(); }, NodeKind::Block);
      return;
    }
    const bool interface_like = c.kind == TypeKind::Interface || c.kind == TypeKind::Annotation;
    Modifiers mods = parse_modifiers(interface_like);
    if (is("class") || is("interface") || is("enum") || (is("@") && is("interface", 1))) {
      ClassModel inner = parse_type_decl(mods, start, c.base_nesting + 1);
      c.nested.push_back(std::move(inner));
      return;
    }
    bool generic = false;
    if (is("<")) {
      parse_type_params();
      generic = true;
    }
    if (is_ident() && is("(", 1)) {
      std::string name = ident();
      if (name != c.name || c.is_anonymous || interface_like) {
        error("method return type");
      }
      parse_method_rest(c, mods, name, true, std::nullopt);
      return;
    }
    std::optional<TypeName> type;
    if (is("void")) {
      advance();
    } else {
      type = parse_type();
    }
    std::string name = ident();
    if (is("(")) {
      parse_method_rest(c, mods, name, false, type);
      return;
    }
    if (generic || !type) error("'('");
    parse_field_rest(c, mods, *type, name);
  }

  void parse_field_rest(ClassModel& c, const Modifiers& mods, const TypeName& type,
                        std::string name) {
    const std::size_t group = c.field_groups++;
    const bool implicit_static = c.kind == TypeKind::Interface || c.kind == TypeKind::Annotation;
    reference(type.mentions);
    while (true) {
      std::string declared = type.erased;
      while (is("[")) {
        advance();
        expect("]");
        declared += "[]";
      }
      c.fields.push_back(FieldModel{name, declared, implicit_static || (mods.flags & kStatic) != 0,
                                    group});
      if (is("=")) {
        advance();
        parse_in_initializer(c, [this] { parse_variable_initializer(); });
      }
      if (!is(",")) break;
      advance();
      name = ident();
    }
    expect(";");
  }

  void parse_method_rest(ClassModel& c, const Modifiers& mods, const std::string& name,
                         bool ctor, const std::optional<TypeName>& ret) {
    const bool interface_like = c.kind == TypeKind::Interface || c.kind == TypeKind::Annotation;
    MethodModel m;
    m.name = name;
    m.is_constructor = ctor;
    m.is_static = (mods.flags & kStatic) != 0;
    if (mods.flags & kPrivate) {
      m.visibility = Visibility::Private;
    } else if (mods.flags & kPublic || interface_like) {
      m.visibility = Visibility::Public;
    } else if (mods.flags & kProtected) {
      m.visibility = Visibility::Protected;
    }
    m.is_public = m.visibility == Visibility::Public;
    if (ret) {
      m.return_type_name = ret->erased;
      reference(ret->mentions);
    }

    BodyContext ctx;
    ctx.scopes.emplace_back();
    expect("(");
    if (!is(")")) {
      while (true) {
        parse_modifiers(false);
        TypeName t = parse_type();
        if (is("...")) {
          advance();
          t.erased += "[]";
        }
        if (is("this")) {
          advance();  // receiver parameter
        } else if (is_ident() && is(".", 1) && is("this", 2)) {
          advance();
          advance();
          advance();
        } else {
          std::string pname = ident();
          while (is("[")) {
            advance();
            expect("]");
            t.erased += "[]";
          }
          m.parameter_type_names.push_back(t.erased);
          reference(t.mentions);
          ctx.declare(pname);
        }
        if (!is(",")) break;
        advance();
      }
    }
    expect(")");
    while (is("[")) {
      advance();
      expect("]");
      if (m.return_type_name) *m.return_type_name += "[]";
    }
    if (is("throws")) {
      advance();
      type_list();
    }
    if (c.kind == TypeKind::Annotation && is("default")) {
      advance();
      Saved s = save();
      StatementTree scratch;
      body_ = nullptr;
      node_ = &scratch;
      parse_element_value();
      restore(s);
    }
    if (is("{")) {
      Saved s = save();
      StatementTree root;
      root.kind = NodeKind::Block;
      root.nesting_depth = c.base_nesting;
      body_ = &ctx;
      node_ = &root;
      depth_ = c.base_nesting;
      const std::size_t begin = full_index();
      parse_block_contents();
      m.body_tokens = TokenSpan{begin, last_full_index() + 1};
      restore(s);
      count_decisions(root, m.decision_tokens);
      m.body = std::move(root);
    } else {
      expect(";");
      m.is_abstract = (mods.flags & kNative) == 0;
    }
    m.accessed_field_names = std::move(ctx.field_uses);
    m.invoked_method_names = std::move(ctx.invoked);
    c.methods.push_back(std::move(m));
  }

  // ---- statements ---------------------------------------------------------

  /// Parses `{ ... }` appending statements to the current node.
  void parse_block_contents() {
    expect("{");
    push_scope();
    while (!is("}")) {
      if (eof()) error("'}'");
      parse_block_statement();
    }
    expect("}");
    pop_scope();
  }

  void parse_block_statement() {
    if (local_class_ahead()) {
      const std::size_t start = full_index();
      Modifiers mods = parse_modifiers(false);
      add_node(NodeKind::LocalClass);
      ClassModel local = parse_type_decl(mods, start, depth_ + 1);
      local.is_local = true;
      cls_->nested.push_back(std::move(local));
      return;
    }
    if (is_local_var_decl()) {
      StatementTree* parent = node_;
      node_ = &add_node(NodeKind::Statement);
      parse_local_var_decl();
      expect(";");
      node_ = parent;
      return;
    }
    parse_statement();
  }

  void parse_local_var_decl() {
    parse_modifiers(false);
    TypeName t = parse_type();
    reject_var(t);
    while (true) {
      std::string name = ident();
      declare(name);
      while (is("[")) {
        advance();
        expect("]");
      }
      if (is("=")) {
        advance();
        parse_variable_initializer();
      }
      if (!is(",")) break;
      advance();
    }
  }

  void parse_variable_initializer() {
    if (is("{")) {
      parse_array_initializer();
    } else {
      parse_expression();
    }
  }

  void parse_array_initializer() {
    expect("{");
    while (!is("}")) {
      parse_variable_initializer();
      if (!is(",")) break;
      advance();
    }
    expect("}");
  }

  /// Runs `f` with `node` as the current node at nesting `depth`.
  template <typename F>
  void within(StatementTree& node, int depth, F&& f) {
    StatementTree* parent = node_;
    const int saved_depth = depth_;
    node_ = &node;
    depth_ = depth;
    f();
    node_ = parent;
    depth_ = saved_depth;
  }

  void parse_paren_expression() {
    expect("(");
    parse_expression();
    expect(")");
  }

  void parse_statement() {
    const int d = depth_;
    if (is("{")) {
      StatementTree& block = add_node(NodeKind::Block);
      within(block, d, [this] { parse_block_contents(); });
    } else if (is(";")) {
      advance();
    } else if (is("if")) {
      parse_if();
    } else if (is("for")) {
      parse_for();
    } else if (is("while")) {
      StatementTree& node = add_node(NodeKind::While);
      advance();
      within(node, d, [this] { parse_paren_expression(); });
      within(node, d + 1, [this] { parse_statement(); });
    } else if (is("do")) {
      StatementTree& node = add_node(NodeKind::Do);
      advance();
      within(node, d + 1, [this] { parse_statement(); });
      within(node, d, [this] {
        expect("while");
        parse_paren_expression();
        expect(";");
      });
    } else if (is("switch")) {
      parse_switch();
    } else if (is("try")) {
      parse_try();
    } else if (is("return")) {
      StatementTree& node = add_node(NodeKind::Return);
      advance();
      within(node, d, [this] {
        if (!is(";")) parse_expression();
        expect(";");
      });
    } else if (is("break") || is("continue")) {
      const bool is_break = is("break");
      advance();
      NodeKind kind = is_break ? NodeKind::Break : NodeKind::Continue;
      if (is_ident()) {
        advance();
        kind = NodeKind::LabeledJump;
      }
      add_node(kind);
      expect(";");
    } else if (is("throw")) {
      StatementTree& node = add_node(NodeKind::Statement);
      advance();
      within(node, d, [this] {
        parse_expression();
        expect(";");
      });
    } else if (is("synchronized")) {
      StatementTree& node = add_node(NodeKind::Synchronized);
      advance();
      within(node, d, [this] {
        parse_paren_expression();
        parse_block_contents();
      });
    } else if (is("assert")) {
      StatementTree& node = add_node(NodeKind::Statement);
      advance();
      within(node, d, [this] {
        parse_expression();
        if (is(":")) {
          advance();
          parse_expression();
        }
        expect(";");
      });
    } else if (is_ident() && is(":", 1)) {
      StatementTree& node = add_node(NodeKind::Labeled);
      advance();
      advance();
      within(node, d, [this] { parse_statement(); });
    } else if (cur().kind == TokenKind::Keyword && !eof() &&
               (is("else") || is("case") || is("default") || is("catch") || is("finally"))) {
      error("statement");
    } else {
      StatementTree& node = add_node(NodeKind::Statement);
      within(node, d, [this] {
        parse_expression();
        expect(";");
      });
    }
  }

  void parse_if() {
    const int d = depth_;
    StatementTree& node = add_node(NodeKind::If);
    advance();
    within(node, d, [this] { parse_paren_expression(); });
    within(node, d + 1, [this] { parse_statement(); });
    while (is("else")) {
      advance();
      if (is("if")) {
        StatementTree& elif = add_node(NodeKind::ElseIf);
        advance();
        within(elif, d, [this] { parse_paren_expression(); });
        within(elif, d + 1, [this] { parse_statement(); });
      } else {
        StatementTree& other = add_node(NodeKind::Else);
        within(other, d + 1, [this] { parse_statement(); });
        break;
      }
    }
  }

  bool foreach_ahead() const {
    std::size_t p = pos_;
    while (true) {
      if (is_lex(p, "final")) {
        ++p;
      } else if (is_lex(p, "@")) {
        auto q = skip_annotation(p);
        if (!q) return false;
        p = *q;
      } else {
        break;
      }
    }
    auto q = skip_type(p);
    return q && is_ident_at(*q) && is_lex(*q + 1, ":");
  }

  void parse_for() {
    const int d = depth_;
    advance();
    expect("(");
    push_scope();
    if (foreach_ahead()) {
      StatementTree& node = add_node(NodeKind::ForEach);
      within(node, d, [this] {
        parse_modifiers(false);
        TypeName t = parse_type();
        reject_var(t);
        declare(ident());
        expect(":");
        parse_expression();
        expect(")");
      });
      within(node, d + 1, [this] { parse_statement(); });
    } else {
      StatementTree& node = add_node(NodeKind::For);
      within(node, d, [this] {
        if (!is(";")) {
          if (is_local_var_decl()) {
            parse_local_var_decl();
          } else {
            parse_expression_list();
          }
        }
        expect(";");
        if (!is(";")) parse_expression();
        expect(";");
        if (!is(")")) parse_expression_list();
        expect(")");
      });
      within(node, d + 1, [this] { parse_statement(); });
    }
    pop_scope();
  }

  void parse_expression_list() {
    while (true) {
      parse_expression();
      if (!is(",")) break;
      advance();
    }
  }

  void parse_switch() {
    const int d = depth_;
    StatementTree& node = add_node(NodeKind::Switch);
    advance();
    within(node, d, [this] { parse_paren_expression(); });
    within(node, d + 1, [this] {
      expect("{");
      push_scope();
      while (!is("}")) {
        if (eof()) error("'}'");
        if (is("case")) {
          advance();
          add_node(NodeKind::CaseLabel);
          parse_conditional();
          if (is("->") || is(",")) error("':' (arrow and multi-value labels are not Java 8)");
          expect(":");
        } else if (is("default")) {
          advance();
          add_node(NodeKind::DefaultLabel);
          if (is("->")) error("':' (arrow labels are not Java 8)");
          expect(":");
        } else {
          parse_block_statement();
        }
      }
      pop_scope();
      expect("}");
    });
  }

  void parse_try() {
    const int d = depth_;
    StatementTree& node = add_node(NodeKind::Try);
    advance();
    bool has_resources = false;
    push_scope();
    within(node, d, [&] {
      if (is("(")) {
        has_resources = true;
        advance();
        while (true) {
          parse_modifiers(false);
          TypeName t = parse_type();
          reject_var(t);
          declare(ident());
          expect("=");
          parse_expression();
          if (!is(";")) break;
          advance();
          if (is(")")) break;
        }
        expect(")");
      }
      parse_block_contents();
    });
    pop_scope();
    bool handlers = false;
    within(node, d, [&] {
      while (is("catch")) {
        handlers = true;
        StatementTree& handler = add_node(NodeKind::Catch);
        advance();
        push_scope();
        within(handler, d, [this] {
          expect("(");
          parse_modifiers(false);
          reference(parse_type().mentions);
          while (is("|")) {
            advance();
            reference(parse_type().mentions);
          }
          declare(ident());
          expect(")");
        });
        within(handler, d + 1, [this] { parse_block_contents(); });
        pop_scope();
      }
      if (is("finally")) {
        handlers = true;
        StatementTree& fin = add_node(NodeKind::Finally);
        advance();
        within(fin, d, [this] { parse_block_contents(); });
      }
    });
    if (!handlers && !has_resources) error("'catch' or 'finally'");
  }

  // ---- expressions --------------------------------------------------------

  void parse_expression() {
    if (is_lambda_start()) {
      parse_lambda();
      return;
    }
    parse_conditional();
    if (gt_consumed_ == 0 && is_assignment(cur()) && !eof()) {
      advance();
      parse_expression();
    }
  }

  void parse_conditional() {
    std::vector<NodeKind> chain;
    parse_binary(1, chain);
    if (!chain.empty()) {
      StatementTree& node = add_node(NodeKind::LogicalChain);
      for (NodeKind k : chain) {
        StatementTree& op = node.children.emplace_back();
        op.kind = k;
        op.nesting_depth = depth_;
      }
    }
    if (is("?")) {
      add_node(NodeKind::Conditional);
      advance();
      parse_expression();
      expect(":");
      if (is_lambda_start()) {
        parse_lambda();
      } else {
        parse_conditional();
      }
    }
  }

  void parse_binary(int min_prec, std::vector<NodeKind>& chain) {
    parse_unary();
    while (gt_consumed_ == 0 && !eof()) {
      const int prec = binary_precedence(cur());
      if (prec == 0 || prec < min_prec) break;
      const std::string op = cur().lexeme;
      advance();
      if (op == "instanceof") {
        parse_modifiers(false);
        parse_type();
        continue;
      }
      if (op == "&&") chain.push_back(NodeKind::LogicalAnd);
      if (op == "||") chain.push_back(NodeKind::LogicalOr);
      parse_binary(prec + 1, chain);
    }
  }

  void parse_unary() {
    if (is("++") || is("--") || is("+") || is("-") || is("~") || is("!")) {
      advance();
      parse_unary();
      return;
    }
    if (is_cast()) {
      advance();
      parse_type();
      while (is("&")) {
        advance();
        parse_type();
      }
      expect(")");
      if (is_lambda_start()) {
        parse_lambda();
      } else {
        parse_unary();
      }
      return;
    }
    parse_primary();
    parse_selectors();
    while (is("++") || is("--")) advance();
  }

  void parse_arguments() {
    expect("(");
    if (!is(")")) parse_expression_list();
    expect(")");
  }

  void parse_member_reference_name() {
    if (is("<")) {
      std::vector<std::string> ignored;
      parse_type_args(ignored);
    }
    if (is("new")) {
      advance();
    } else {
      note_invocation(ident());
    }
  }

  void parse_primary() {
    const Token& t = cur();
    if (eof()) error("expression");
    if (t.is_literal()) {
      advance();
      return;
    }
    if (is("(")) {
      parse_paren_expression();
      return;
    }
    if (is("this")) {
      advance();
      if (is("(")) {
        parse_arguments();
      } else if (is(".") && is_ident(1) && !is("(", 2)) {
        note_this_field(cur(1).lexeme);
      }
      return;
    }
    if (is("super")) {
      advance();
      if (is("(")) {
        parse_arguments();
        return;
      }
      if (is("::")) {
        advance();
        parse_member_reference_name();
        return;
      }
      expect(".");
      if (is("<")) {
        std::vector<std::string> ignored;
        parse_type_args(ignored);
      }
      std::string name = ident();
      if (is("(")) {
        note_invocation(name);
        parse_arguments();
      }
      return;
    }
    if (is("new")) {
      parse_creator();
      return;
    }
    if (is("void") || is_primitive(t)) {
      if (is("void")) {
        advance();
      } else {
        parse_type();
      }
      if (is(".") && is("class", 1)) {
        advance();
        advance();
      } else if (is("::")) {
        advance();
        parse_member_reference_name();
      } else {
        error("'.class'");
      }
      return;
    }
    if (is_ident()) {
      if (is("<", 1) || (is("[", 1) && is("]", 2))) {
        auto q = skip_type(pos_);
        if (q && (is_lex(*q, "::") || (is_lex(*q, ".") && is_lex(*q + 1, "class")))) {
          parse_type();
          if (is("::")) {
            advance();
            parse_member_reference_name();
          } else {
            advance();
            advance();
          }
          return;
        }
      }
      std::string name = ident();
      if (is("(")) {
        note_invocation(name);
        parse_arguments();
        return;
      }
      note_field_use(name);
      return;
    }
    if (is("switch")) error("expression (switch expressions are not Java 8)");
    error("expression");
  }

  void parse_selectors() {
    while (!eof() && gt_consumed_ == 0) {
      if (is(".")) {
        if (is("<", 1)) {
          advance();
          std::vector<std::string> ignored;
          parse_type_args(ignored);
          std::string name = ident();
          note_invocation(name);
          parse_arguments();
          continue;
        }
        if (is("new", 1)) {
          advance();
          parse_creator();
          continue;
        }
        if (is("this", 1) || is("class", 1)) {
          advance();
          advance();
          continue;
        }
        if (is("super", 1)) {
          advance();
          advance();
          if (is("::")) {
            advance();
            parse_member_reference_name();
          }
          continue;
        }
        advance();
        std::string name = ident();
        if (is("(")) {
          note_invocation(name);
          parse_arguments();
        }
        continue;
      }
      if (is("[")) {
        advance();
        parse_expression();
        expect("]");
        continue;
      }
      if (is("::")) {
        advance();
        parse_member_reference_name();
        continue;
      }
      break;
    }
  }

  void parse_creator() {
    expect("new");
    std::vector<std::string> ignored;
    if (is("<")) parse_type_args(ignored);
    while (is("@")) parse_annotation();
    TypeName t;
    if (gt_consumed_ == 0 && is_primitive(cur()) && !eof()) {
      t.erased = cur().lexeme;
      t.primitive = true;
      advance();
    } else {
      t.erased = ident();
      if (is("<")) parse_type_args(t.mentions);
      while (is(".") && is_ident(1)) {
        advance();
        t.erased += "." + ident();
        if (is("<")) parse_type_args(t.mentions);
      }
      t.mentions.push_back(t.erased);
    }
    reference(t.mentions);
    if (is("[")) {
      if (is("]", 1)) {
        while (is("[") && is("]", 1)) {
          advance();
          advance();
        }
        parse_array_initializer();
      } else {
        while (is("[") && !is("]", 1)) {
          advance();
          parse_expression();
          expect("]");
        }
        while (is("[") && is("]", 1)) {
          advance();
          advance();
        }
      }
      return;
    }
    if (t.primitive) error("'['");
    parse_arguments();
    if (is("{")) {
      ClassModel anon;
      anon.name = simple_name(t.erased);
      anon.is_anonymous = true;
      anon.base_nesting = depth_ + 1;
      anon.tokens.begin = full_index();
      anon.first_line = cur().line;
      parse_class_body(anon);
      anon.tokens.end = last_full_index() + 1;
      anon.last_line = toks_[last_full_index()].line;
      cls_->nested.push_back(std::move(anon));
    }
  }

  void parse_lambda() {
    const int d = depth_;
    StatementTree& node = add_node(NodeKind::Lambda);
    push_scope();
    within(node, d + 1, [this] {
      if (is_ident()) {
        declare(ident());
      } else {
        expect("(");
        if (!is(")")) {
          if (is_ident() && (is(",", 1) || is(")", 1))) {
            while (true) {
              declare(ident());
              if (!is(",")) break;
              advance();
            }
          } else {
            while (true) {
              parse_modifiers(false);
              TypeName t = parse_type();
              reject_var(t);
              if (is("...")) advance();
              declare(ident());
              while (is("[")) {
                advance();
                expect("]");
              }
              if (!is(",")) break;
              advance();
            }
          }
        }
        expect(")");
      }
      expect("->");
      if (is("{")) {
        parse_block_contents();
      } else {
        parse_expression();
      }
    });
    pop_scope();
  }

  const std::vector<Token>& toks_;
  std::vector<std::size_t> code_;
  Token eof_;
  std::size_t pos_ = 0;
  int gt_consumed_ = 0;

  ClassModel* cls_ = nullptr;
  BodyContext* body_ = nullptr;
  StatementTree* node_ = nullptr;
  int depth_ = 0;
  StatementTree scratch_;
};

CompilationUnit Parser::parse_unit() {
  CompilationUnit unit;
  {
    std::size_t p = pos_;
    while (is_lex(p, "@") && !is_lex(p + 1, "interface")) {
      auto q = skip_annotation(p);
      if (!q) break;
      p = *q;
    }
    if (is_lex(p, "package")) {
      while (is("@")) parse_annotation();
      expect("package");
      unit.package_name = qualified_name();
      expect(";");
    }
  }
  while (is("import")) {
    advance();
    ImportDecl imp;
    if (is("static")) {
      advance();
      imp.is_static = true;
    }
    imp.name = ident();
    while (is(".")) {
      advance();
      if (is("*")) {
        advance();
        imp.is_wildcard = true;
        break;
      }
      imp.name += "." + ident();
    }
    expect(";");
    unit.imports.push_back(std::move(imp));
  }
  std::set<std::string> seen;
  while (!eof()) {
    if (is(";")) {
      advance();
      continue;
    }
    const std::size_t start = full_index();
    Modifiers mods = parse_modifiers(false);
    const Token& name_tok = cur(1);
    ClassModel c = parse_type_decl(mods, start, 0);
    if (!seen.insert(c.name).second) {
      throw SyntaxError(name_tok.line, name_tok.column, "unique type name (duplicate class " + c.name + ")");
    }
    unit.types.push_back(std::move(c));
  }
  return unit;
}

}  // namespace

CompilationUnit parse_tokens(const TokenList& tokens) { return Parser(tokens).parse_unit(); }

CompilationUnit parse(std::string_view source) { return parse_tokens(tokenize(source)); }

ParsedFile parse_file(std::string_view source) {
  ParsedFile out;
  out.tokens = tokenize(source);
  out.unit = parse_tokens(out.tokens);
  return out;
}

std::vector<ClassModel> extract_classes(const CompilationUnit& unit) { return unit.types; }

}  // namespace cam::java
