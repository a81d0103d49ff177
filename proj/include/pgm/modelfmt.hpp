#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgm/model.hpp"

namespace pgm::modelfmt {

// Line-oriented plain-text network definitions (extension .pgm.txt).
// '#' starts a comment, blank lines are ignored, and the grammar is:
//
//   network <ident>
//   var <ident> <chance|decision|utility> { <label>+ } [<- <parent>+]
//   cpt <ident> [| <parent>=<label> (, <parent>=<label>)*]
//       : <label>=<prob> (, <label>=<prob>)*
//
// Each cpt statement is one row. <prob> is either p/q with integers and
// q > 0, or a decimal literal converted exactly ("0.5" is 1/2, ".33" is
// 33/100 -- exact base-10, never a binary float or 1/3). Identifiers are
// ASCII letters, digits and underscores, starting with a letter or
// underscore; outcome labels may also start with a digit. Outcomes missing
// from a row are zero.

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;

  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }
};

// One scanned statement, before semantic assembly.
struct VarDecl {
  std::string name;
  VariableKind kind = VariableKind::Chance;
  std::vector<std::string> labels;
  std::vector<std::string> parents;
  int line = 0;
  int column = 0;
};

struct CptRowDecl {
  std::string variable;
  std::vector<std::pair<std::string, std::string>> parent_bindings;
  std::vector<std::pair<std::string, Rational>> entries;
  int line = 0;
  int column = 0;
};

struct ModelDocument {
  std::string name;
  std::vector<VarDecl> vars;
  std::vector<CptRowDecl> rows;
};

struct ParseResult {
  // Present only when there are no diagnostics; always validated.
  std::optional<Network> network;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
  std::string diagnostics_to_string() const;
};

// Scans statements, assembles a network, and runs validate_network over it.
// All lexical, syntactic and semantic problems are collected -- never just
// the first -- each with the line and column of the statement at fault.
ParseResult parse_model(std::string_view text);

// The scan stage alone: statements with their source spans, no semantic
// checking. Lexical and syntax problems are appended to `diagnostics`.
ModelDocument scan_document(std::string_view text, std::vector<Diagnostic>& diagnostics);

// Canonical byte-stable form: declaration order preserved, every CPT row on
// its own line in parent-product order (first parent most significant),
// every outcome listed in domain order, probabilities as reduced rationals.
// Structurally equal networks serialize to identical bytes. The input must
// be a valid network (StructuralError otherwise).
std::string serialize(const Network& net);

}  // namespace pgm::modelfmt
