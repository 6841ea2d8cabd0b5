#include <string>

#include "cam/dataset/dataset.hpp"

namespace cam::dataset {

std::string schema_markdown() {
  std::string out;
  out += "# Dataset schema\n\n";
  out += "Schema version " + std::string(kSchemaVersion) + ", produced by cam " + kToolVersion + ".\n\n";
  out += "Each row describes one top-level Java class. The key columns are `repo` (owner/name), `path` "
         "(repository-relative, forward slashes) and `class_name`, followed by 48 metric columns in the order "
         "below. Rows are sorted by the three key columns. Files are UTF-8 with LF line endings. Real values use "
         "the shortest decimal form that reads back to the same double. An empty cell means the metric is "
         "undefined for the class (for example cohesion of a class with a single method).\n\n";
  out += "Columns marked `core` are metrics named by the original study; `extension` columns complete the "
         "48-column set with counts that are cheap to compute from the parsed class.\n\n";
  out += "| # | column | group | origin | type | definition |\n";
  out += "|---|--------|-------|--------|------|------------|\n";
  int i = 1;
  for (const auto& c : metrics::columns()) {
    out += "| " + std::to_string(i++) + " | `" + std::string(c.name) + "` | " + std::string(c.group) + " | " +
           (c.core ? "core" : "extension") + " | " + (c.integer ? "integer" : "real") + " | " +
           std::string(c.definition) + " |\n";
  }
  out += R"(
## Scope and selection

- Repositories: GitHub search with `language:java`, stars in the inclusive range 1000..10000 and size of at
  least 200 KB by default. The original wording ("more than 1K and less than 10K stars") reads as exclusive
  bounds; the inclusive query is used here.
- Every repository is pinned to the head commit of its default branch at discovery time. The manifest lists
  each pin.
- A file enters the dataset only if it passes, in this order: `.java` extension; not `package-info.java` or
  `module-info.java`; valid UTF-8; no line longer than 1024 characters (Unicode scalar values, lines split on
  LF with CR removed); not a test file; parses as Java 8. The first failing rule is recorded in the manifest.
- Test files are detected by any of: a path segment equal to `test`, `tests` or `testFixtures`
  (case-insensitive); a file name matching `*Test.java`, `*Tests.java`, `*TestCase.java` or `Test*.java`; an
  import starting with `org.junit`, `junit.framework` or `org.testng`.
- The parser accepts Java 8. Records, sealed types, switch expressions and arrow labels, `var` declarations,
  pattern matching and text blocks make a file unparseable.

## Modelling choices

- Nested, local and anonymous classes do not get rows. Their statements and complexity fold into the
  enclosing top-level class; member counts and cohesion use the top-level declarations only.
- Field accesses are recognised by name (plain or `this.`-qualified) and suppressed when a local variable,
  parameter or lambda parameter of the same name is in scope.
- Coupling and inheritance are resolved by name against the classes of the same repository snapshot; no
  classpath is consulted.
- The abstract of the original study lists "LCOM5 and HND"; the cohesion measure implemented is the
  Normalized Hamming Distance (`nhd`).
- Cognitive complexity scores an operator run by its changes of operator: `a && b` adds nothing and
  `a && b || c` adds one.
- The five history columns are defined here; the original study does not list its history metrics.
)";
  return out;
}

}  // namespace cam::dataset
