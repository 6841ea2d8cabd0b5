#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cam/java/model.hpp"

namespace cam::metrics {

/// Fixed-width row of bits backed by 64-bit words.
class BitRow {
 public:
  explicit BitRow(std::size_t bits = 0) : bits_(bits), words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  std::size_t size() const { return bits_; }
  std::size_t count() const;
  bool intersects(const BitRow& other) const;

 private:
  std::size_t bits_;
  std::vector<std::uint64_t> words_;
};

/// Method × instance-attribute access relation. Rows are non-static,
/// non-constructor methods in declaration order.
struct AccessMatrix {
  std::vector<std::string> methods;
  std::vector<std::string> attributes;
  std::vector<BitRow> cells;
  /// Rows that take part in TCC: public methods with a body.
  std::vector<bool> visible;

  AccessMatrix() = default;
  AccessMatrix(std::size_t rows, std::size_t columns);
};

/// Method × parameter-type relation over all non-constructor methods.
struct ParamTypeMatrix {
  std::vector<std::string> methods;
  std::vector<std::string> param_types;
  std::vector<BitRow> cells;

  ParamTypeMatrix() = default;
  ParamTypeMatrix(std::size_t rows, std::size_t columns);
};

AccessMatrix access_matrix(const java::ClassModel& cls);
ParamTypeMatrix param_type_matrix(const java::ClassModel& cls);

double lcom5(const AccessMatrix& matrix);
double nhd(const ParamTypeMatrix& matrix);
/// Direct connectivity over the rows flagged visible.
double tcc(const AccessMatrix& matrix);
int lcom1(const AccessMatrix& matrix);

int wmc(const java::ClassModel& cls);
int rfc(const java::ClassModel& cls);

/// Per-repository inheritance and coupling graph. Names are resolved
/// against the classes added to the graph only.
class ClassGraph {
 public:
  using Id = std::size_t;

  Id add(const std::string& path, const java::CompilationUnit& unit, const java::ClassModel& cls);

  /// Resolves every reference and extends edge. Must run before queries.
  void finalize();

  std::size_t size() const { return nodes_.size(); }
  std::optional<Id> resolve(Id from, const std::string& name) const;

  int cbo(Id id) const;
  int dit(Id id) const;
  int noc(Id id) const;
  bool in_cycle(Id id) const { return nodes_.at(id).in_cycle; }
  const std::string& name(Id id) const { return nodes_.at(id).name; }
  const std::string& path(Id id) const { return nodes_.at(id).path; }

 private:
  struct Node {
    std::string path;
    std::string name;
    std::string package;  // empty for the default package
    std::vector<java::ImportDecl> imports;
    std::optional<std::string> extends_name;
    std::set<std::string> references;
    std::optional<Id> parent;
    std::set<Id> coupled;
    int children = 0;
    int dit = 0;
    bool in_cycle = false;
  };

  std::optional<Id> lookup_fqn(const std::string& fqn) const;
  std::optional<Id> lookup_simple(const std::string& package, const std::string& simple) const;
  void compute_dit();

  std::vector<Node> nodes_;
  std::unordered_map<std::string, Id> by_fqn_;
  bool finalized_ = false;
};

}  // namespace cam::metrics
