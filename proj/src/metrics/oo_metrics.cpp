#include "cam/metrics/oo_metrics.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <stdexcept>

#include "cam/metrics/code_metrics.hpp"

namespace cam::metrics {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void collect_references(const java::ClassModel& cls, std::set<std::string>& out, bool top) {
  out.insert(cls.referenced_type_names.begin(), cls.referenced_type_names.end());
  if (!top && cls.extends_name) out.insert(*cls.extends_name);
  if (!top) out.insert(cls.implements_names.begin(), cls.implements_names.end());
  for (const auto& inner : cls.nested) collect_references(inner, out, false);
}

}  // namespace

std::size_t BitRow::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitRow::intersects(const BitRow& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

AccessMatrix::AccessMatrix(std::size_t rows, std::size_t columns)
    : methods(rows), attributes(columns), cells(rows, BitRow(columns)), visible(rows, true) {}

ParamTypeMatrix::ParamTypeMatrix(std::size_t rows, std::size_t columns)
    : methods(rows), param_types(columns), cells(rows, BitRow(columns)) {}

AccessMatrix access_matrix(const java::ClassModel& cls) {
  std::vector<std::string> attributes;
  for (const auto& f : cls.fields) {
    if (!f.is_static && std::find(attributes.begin(), attributes.end(), f.name) == attributes.end()) {
      attributes.push_back(f.name);
    }
  }
  std::vector<const java::MethodModel*> rows;
  for (const auto& m : cls.methods) {
    if (!m.is_constructor && !m.is_static) rows.push_back(&m);
  }
  AccessMatrix out(rows.size(), attributes.size());
  out.attributes = attributes;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.methods[i] = rows[i]->name;
    out.visible[i] = rows[i]->is_public && rows[i]->body.has_value();
    for (std::size_t j = 0; j < attributes.size(); ++j) {
      if (rows[i]->accessed_field_names.count(attributes[j])) out.cells[i].set(j);
    }
  }
  return out;
}

ParamTypeMatrix param_type_matrix(const java::ClassModel& cls) {
  std::vector<const java::MethodModel*> rows;
  std::vector<std::string> types;
  for (const auto& m : cls.methods) {
    if (m.is_constructor) continue;
    rows.push_back(&m);
    for (const auto& t : m.parameter_type_names) {
      if (std::find(types.begin(), types.end(), t) == types.end()) types.push_back(t);
    }
  }
  ParamTypeMatrix out(rows.size(), types.size());
  out.param_types = types;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.methods[i] = rows[i]->name;
    for (const auto& t : rows[i]->parameter_type_names) {
      auto j = static_cast<std::size_t>(std::find(types.begin(), types.end(), t) - types.begin());
      out.cells[i].set(j);
    }
  }
  return out;
}

double lcom5(const AccessMatrix& matrix) {
  const std::size_t m = matrix.cells.size();
  const std::size_t a = matrix.attributes.size();
  if (m <= 1 || a == 0) return kNaN;
  std::size_t accesses = 0;
  for (const auto& row : matrix.cells) accesses += row.count();
  const double md = static_cast<double>(m);
  return (md - static_cast<double>(accesses) / static_cast<double>(a)) / (md - 1.0);
}

double nhd(const ParamTypeMatrix& matrix) {
  const std::size_t k = matrix.cells.size();
  const std::size_t l = matrix.param_types.size();
  if (k <= 1 || l == 0) return kNaN;
  std::vector<std::size_t> column(l, 0);
  for (const auto& row : matrix.cells) {
    for (std::size_t j = 0; j < l; ++j) column[j] += row.test(j) ? 1 : 0;
  }
  double disagreement = 0.0;
  for (auto c : column) disagreement += static_cast<double>(c) * static_cast<double>(k - c);
  const double kd = static_cast<double>(k);
  return 1.0 - (2.0 / (static_cast<double>(l) * kd * (kd - 1.0))) * disagreement;
}

double tcc(const AccessMatrix& matrix) {
  std::vector<const BitRow*> visible;
  for (std::size_t i = 0; i < matrix.cells.size(); ++i) {
    if (i >= matrix.visible.size() || matrix.visible[i]) visible.push_back(&matrix.cells[i]);
  }
  const std::size_t n = visible.size();
  if (n <= 1) return kNaN;
  std::size_t connected = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (visible[i]->intersects(*visible[j])) ++connected;
    }
  }
  return static_cast<double>(connected) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

int lcom1(const AccessMatrix& matrix) {
  const std::size_t m = matrix.cells.size();
  long long p = 0;
  long long q = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (matrix.cells[i].intersects(matrix.cells[j])) {
        ++q;
      } else {
        ++p;
      }
    }
  }
  return static_cast<int>(std::max(p - q, 0LL));
}

int wmc(const java::ClassModel& cls) {
  int total = 0;
  for (const auto& m : cls.methods) total += cyclomatic(m);
  return total;
}

int rfc(const java::ClassModel& cls) {
  std::set<std::string> declared;
  for (const auto& m : cls.methods) declared.insert(m.name);
  std::set<std::string> external;
  for (const auto& m : cls.methods) {
    for (const auto& name : m.invoked_method_names) {
      if (!declared.count(name)) external.insert(name);
    }
  }
  return static_cast<int>(declared.size() + external.size());
}

ClassGraph::Id ClassGraph::add(const std::string& path, const java::CompilationUnit& unit,
                               const java::ClassModel& cls) {
  Node node;
  node.path = path;
  node.name = cls.name;
  node.package = unit.package_name.value_or("");
  node.imports = unit.imports;
  node.extends_name = cls.extends_name;
  collect_references(cls, node.references, true);
  if (cls.extends_name) node.references.insert(*cls.extends_name);
  node.references.insert(cls.implements_names.begin(), cls.implements_names.end());
  nodes_.push_back(std::move(node));
  finalized_ = false;
  return nodes_.size() - 1;
}

std::optional<ClassGraph::Id> ClassGraph::lookup_fqn(const std::string& fqn) const {
  auto it = by_fqn_.find(fqn);
  if (it == by_fqn_.end()) return std::nullopt;
  return it->second;
}

std::optional<ClassGraph::Id> ClassGraph::lookup_simple(const std::string& package,
                                                        const std::string& simple) const {
  return lookup_fqn(package.empty() ? simple : package + "." + simple);
}

std::optional<ClassGraph::Id> ClassGraph::resolve(Id from, const std::string& name) const {
  const Node& node = nodes_.at(from);
  if (name.empty()) return std::nullopt;
  const auto dot = name.find('.');
  if (dot != std::string::npos) {
    if (auto hit = lookup_fqn(name)) return hit;
    // Qualified access to a nested type: p.Outer.Inner resolves to p.Outer.
    for (auto cut = name.rfind('.'); cut != std::string::npos && cut > 0; cut = name.rfind('.', cut - 1)) {
      if (auto hit = lookup_fqn(name.substr(0, cut))) return hit;
    }
    const std::string head = name.substr(0, dot);
    if (!std::isupper(static_cast<unsigned char>(head[0]))) return std::nullopt;
    return resolve(from, head);
  }
  for (const auto& imp : node.imports) {
    if (imp.is_static || imp.is_wildcard) continue;
    const auto cut = imp.name.rfind('.');
    const std::string last = cut == std::string::npos ? imp.name : imp.name.substr(cut + 1);
    if (last == name) return lookup_fqn(imp.name);
  }
  if (auto hit = lookup_simple(node.package, name)) return hit;
  for (const auto& imp : node.imports) {
    if (imp.is_static || !imp.is_wildcard) continue;
    if (auto hit = lookup_fqn(imp.name + "." + name)) return hit;
  }
  return std::nullopt;
}

void ClassGraph::finalize() {
  by_fqn_.clear();
  for (Id id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    const std::string fqn = n.package.empty() ? n.name : n.package + "." + n.name;
    auto [it, inserted] = by_fqn_.emplace(fqn, id);
    // Duplicate qualified names (copied sources, multi-module builds) go to
    // the lexicographically first path.
    if (!inserted && n.path < nodes_[it->second].path) it->second = id;
  }
  for (auto& n : nodes_) {
    n.parent.reset();
    n.coupled.clear();
    n.children = 0;
    n.in_cycle = false;
  }
  for (Id id = 0; id < nodes_.size(); ++id) {
    for (const auto& ref : nodes_[id].references) {
      auto target = resolve(id, ref);
      if (!target || *target == id) continue;
      nodes_[id].coupled.insert(*target);
      nodes_[*target].coupled.insert(id);
    }
    const auto& ext = nodes_[id].extends_name;
    if (ext && *ext != "Object" && *ext != "java.lang.Object") {
      nodes_[id].parent = resolve(id, *ext);
      if (nodes_[id].parent) ++nodes_[*nodes_[id].parent].children;
    }
  }
  compute_dit();
  finalized_ = true;
}

void ClassGraph::compute_dit() {
  // 0 = unvisited, 1 = on the current chain, 2 = done
  std::vector<int> state(nodes_.size(), 0);
  for (Id start = 0; start < nodes_.size(); ++start) {
    if (state[start] == 2) continue;
    std::vector<Id> chain;
    Id cur = start;
    bool cycle = false;
    while (true) {
      if (state[cur] == 2) break;
      if (state[cur] == 1) {
        cycle = true;
        break;
      }
      state[cur] = 1;
      chain.push_back(cur);
      if (!nodes_[cur].parent) break;
      cur = *nodes_[cur].parent;
    }
    std::size_t resolved_until = chain.size();
    if (cycle) {
      // Members of the loop fall back to the unresolvable-parent depth.
      auto pos = static_cast<std::size_t>(std::find(chain.begin(), chain.end(), cur) - chain.begin());
      for (std::size_t i = pos; i < chain.size(); ++i) {
        nodes_[chain[i]].dit = 1;
        nodes_[chain[i]].in_cycle = true;
        state[chain[i]] = 2;
      }
      resolved_until = pos;
    }
    for (std::size_t i = resolved_until; i-- > 0;) {
      Node& n = nodes_[chain[i]];
      if (n.parent) {
        n.dit = nodes_[*n.parent].dit + 1;
      } else {
        n.dit = n.extends_name && *n.extends_name != "Object" && *n.extends_name != "java.lang.Object" ? 1 : 0;
      }
      state[chain[i]] = 2;
    }
  }
}

int ClassGraph::cbo(Id id) const {
  if (!finalized_) throw std::logic_error("ClassGraph queried before finalize()");
  return static_cast<int>(nodes_.at(id).coupled.size());
}

int ClassGraph::dit(Id id) const {
  if (!finalized_) throw std::logic_error("ClassGraph queried before finalize()");
  return nodes_.at(id).dit;
}

int ClassGraph::noc(Id id) const {
  if (!finalized_) throw std::logic_error("ClassGraph queried before finalize()");
  return nodes_.at(id).children;
}

}  // namespace cam::metrics
