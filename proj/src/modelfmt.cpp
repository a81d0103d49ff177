#include "pgm/modelfmt.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "pgm/errors.hpp"

namespace pgm::modelfmt {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
  bool is_word = false;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '/' || c == '+' || c == '-';
}

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_label(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Splits one source line into tokens. Returns false (with a diagnostic) on a
// character that fits nowhere.
bool tokenize(std::string_view text, int line_no, std::vector<Token>& out,
              std::vector<Diagnostic>& diags) {
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') break;  // comment to end of line
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const int column = static_cast<int>(i) + 1;
    if (c == '{' || c == '}' || c == '|' || c == ':' || c == ',' || c == '=') {
      out.push_back({std::string(1, c), column, false});
      ++i;
      continue;
    }
    if (c == '<') {
      if (i + 1 < text.size() && text[i + 1] == '-') {
        out.push_back({"<-", column, false});
        i += 2;
        continue;
      }
      diags.push_back({line_no, column, "stray '<' (did you mean '<-'?)"});
      return false;
    }
    if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      out.push_back({std::string(text.substr(i, j - i)), column, true});
      i = j;
      continue;
    }
    diags.push_back({line_no, column, std::string("unexpected character '") + c + "'"});
    return false;
  }
  return true;
}

// Cursor over one line's tokens with uniform error reporting.
struct LineParser {
  const std::vector<Token>& tokens;
  std::size_t pos = 0;
  int line_no;
  int line_end_column;
  std::vector<Diagnostic>& diags;

  const Token* peek() const { return pos < tokens.size() ? &tokens[pos] : nullptr; }

  bool at_end() const { return pos >= tokens.size(); }

  void error(const std::string& message) {
    const int column = pos < tokens.size() ? tokens[pos].column : line_end_column;
    diags.push_back({line_no, column, message});
  }

  const Token* take_word(const std::string& what) {
    if (const Token* t = peek(); t != nullptr && t->is_word) {
      ++pos;
      return t;
    }
    error("expected " + what);
    return nullptr;
  }

  bool take_punct(const std::string& text) {
    if (const Token* t = peek(); t != nullptr && !t->is_word && t->text == text) {
      ++pos;
      return true;
    }
    error("expected '" + text + "'");
    return false;
  }

  bool punct_ahead(const std::string& text) const {
    const Token* t = peek();
    return t != nullptr && !t->is_word && t->text == text;
  }
};

std::optional<VarDecl> parse_var(LineParser& p) {
  VarDecl decl;
  decl.line = p.line_no;
  decl.column = 1;
  const Token* name = p.take_word("variable name");
  if (name == nullptr) return std::nullopt;
  if (!is_ident(name->text)) {
    p.diags.push_back({p.line_no, name->column, "'" + name->text + "' is not an identifier"});
    return std::nullopt;
  }
  decl.name = name->text;

  const Token* kind = p.take_word("variable kind (chance, decision or utility)");
  if (kind == nullptr) return std::nullopt;
  const auto parsed_kind = variable_kind_from_string(kind->text);
  if (!parsed_kind.has_value()) {
    p.diags.push_back({p.line_no, kind->column,
                       "unknown variable kind '" + kind->text + "'"});
    return std::nullopt;
  }
  decl.kind = *parsed_kind;

  if (!p.take_punct("{")) return std::nullopt;
  while (!p.punct_ahead("}")) {
    const Token* label = p.take_word("outcome label");
    if (label == nullptr) return std::nullopt;
    if (!is_label(label->text)) {
      p.diags.push_back({p.line_no, label->column,
                         "'" + label->text + "' is not a valid outcome label"});
      return std::nullopt;
    }
    decl.labels.push_back(label->text);
  }
  p.take_punct("}");
  if (decl.labels.empty()) {
    p.diags.push_back({p.line_no, p.line_end_column, "domain of '" + decl.name +
                                                         "' has no outcomes"});
    return std::nullopt;
  }

  if (p.punct_ahead("<-")) {
    p.take_punct("<-");
    while (!p.at_end()) {
      const Token* parent = p.take_word("parent name");
      if (parent == nullptr) return std::nullopt;
      if (!is_ident(parent->text)) {
        p.diags.push_back({p.line_no, parent->column,
                           "'" + parent->text + "' is not an identifier"});
        return std::nullopt;
      }
      decl.parents.push_back(parent->text);
    }
    if (decl.parents.empty()) {
      p.error("expected at least one parent after '<-'");
      return std::nullopt;
    }
  }
  if (!p.at_end()) {
    p.error("unexpected trailing tokens");
    return std::nullopt;
  }
  return decl;
}

std::optional<CptRowDecl> parse_cpt(LineParser& p) {
  CptRowDecl decl;
  decl.line = p.line_no;
  decl.column = 1;
  const Token* name = p.take_word("variable name");
  if (name == nullptr) return std::nullopt;
  decl.variable = name->text;

  if (p.punct_ahead("|")) {
    p.take_punct("|");
    while (true) {
      const Token* parent = p.take_word("parent name");
      if (parent == nullptr) return std::nullopt;
      if (!p.take_punct("=")) return std::nullopt;
      const Token* label = p.take_word("outcome label");
      if (label == nullptr) return std::nullopt;
      decl.parent_bindings.emplace_back(parent->text, label->text);
      if (p.punct_ahead(",")) {
        p.take_punct(",");
        continue;
      }
      break;
    }
  }

  if (!p.take_punct(":")) return std::nullopt;

  while (true) {
    const Token* label = p.take_word("outcome label");
    if (label == nullptr) return std::nullopt;
    if (!p.take_punct("=")) return std::nullopt;
    const Token* prob = p.take_word("probability");
    if (prob == nullptr) return std::nullopt;
    Rational value;
    try {
      value = Rational::parse(prob->text);
    } catch (const std::exception& e) {
      p.diags.push_back({p.line_no, prob->column, e.what()});
      return std::nullopt;
    }
    decl.entries.emplace_back(label->text, value);
    if (p.punct_ahead(",")) {
      p.take_punct(",");
      continue;
    }
    break;
  }
  if (!p.at_end()) {
    p.error("unexpected trailing tokens");
    return std::nullopt;
  }
  return decl;
}

ModelDocument scan(std::string_view text, std::vector<Diagnostic>& diags) {
  ModelDocument doc;
  bool saw_network = false;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                         : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    std::vector<Token> tokens;
    if (!tokenize(line, line_no, tokens, diags)) continue;
    if (tokens.empty()) continue;

    LineParser p{tokens, 0, line_no, static_cast<int>(line.size()) + 1, diags};
    const Token* head = p.take_word("statement keyword");
    if (head == nullptr) continue;

    if (head->text == "network") {
      const Token* name = p.take_word("network name");
      if (name == nullptr) continue;
      if (!is_ident(name->text)) {
        diags.push_back({line_no, name->column, "'" + name->text + "' is not an identifier"});
        continue;
      }
      if (saw_network) {
        diags.push_back({line_no, head->column, "duplicate 'network' declaration"});
        continue;
      }
      if (!doc.vars.empty() || !doc.rows.empty()) {
        diags.push_back({line_no, head->column,
                         "'network' must be the first statement"});
      }
      saw_network = true;
      doc.name = name->text;
    } else if (head->text == "var") {
      if (auto decl = parse_var(p); decl.has_value()) doc.vars.push_back(std::move(*decl));
    } else if (head->text == "cpt") {
      if (auto decl = parse_cpt(p); decl.has_value()) doc.rows.push_back(std::move(*decl));
    } else {
      diags.push_back({line_no, head->column,
                       "expected 'network', 'var' or 'cpt', got '" + head->text + "'"});
      continue;
    }
  }

  if (!saw_network && (!doc.vars.empty() || !doc.rows.empty())) {
    diags.push_back({1, 1, "missing 'network <name>' header"});
  }
  return doc;
}

struct RowLocation {
  int line;
  int column;
};

Network assemble(const ModelDocument& doc, std::vector<Diagnostic>& diags,
                 std::map<std::string, RowLocation>& var_locations,
                 std::map<std::pair<std::string, std::vector<std::string>>, RowLocation>&
                     row_locations) {
  Network net;
  net.name = doc.name;
  for (const VarDecl& decl : doc.vars) {
    net.variables.push_back({decl.name, decl.kind, {decl.labels}, decl.parents});
    var_locations.insert({decl.name, {decl.line, decl.column}});
  }

  std::map<std::string, Cpt> cpts;  // keyed by variable, kept in decl order later
  for (const CptRowDecl& row_decl : doc.rows) {
    const Variable* v = net.find_variable(row_decl.variable);
    if (v == nullptr) {
      diags.push_back({row_decl.line, row_decl.column,
                       "cpt for unknown variable '" + row_decl.variable + "'"});
      continue;
    }

    // Rebuild the key in declared parent order, whatever order the document
    // wrote the bindings in.
    std::vector<std::string> key;
    bool key_ok = true;
    std::set<std::string> bound;
    for (const auto& [parent, label] : row_decl.parent_bindings) {
      if (std::find(v->parents.begin(), v->parents.end(), parent) == v->parents.end()) {
        diags.push_back({row_decl.line, row_decl.column,
                         "'" + parent + "' is not a parent of " + v->name});
        key_ok = false;
      } else if (!bound.insert(parent).second) {
        diags.push_back({row_decl.line, row_decl.column,
                         "parent '" + parent + "' bound twice"});
        key_ok = false;
      }
      (void)label;
    }
    for (const std::string& parent : v->parents) {
      if (!bound.contains(parent)) {
        diags.push_back({row_decl.line, row_decl.column,
                         "row does not bind parent '" + parent + "' of " + v->name});
        key_ok = false;
      }
    }
    if (!key_ok) continue;
    for (const std::string& parent : v->parents) {
      for (const auto& [name, label] : row_decl.parent_bindings) {
        if (name == parent) key.push_back(label);
      }
    }

    // Distribution over the full domain; unlisted outcomes are zero.
    std::vector<Rational> values(v->domain.size(), Rational(0));
    bool entries_ok = true;
    std::set<std::string> seen;
    for (const auto& [label, value] : row_decl.entries) {
      const int idx = v->domain.index_of(label);
      if (idx < 0) {
        diags.push_back({row_decl.line, row_decl.column,
                         "'" + label + "' is not an outcome of " + v->name});
        entries_ok = false;
        continue;
      }
      if (!seen.insert(label).second) {
        diags.push_back({row_decl.line, row_decl.column,
                         "outcome '" + label + "' listed twice"});
        entries_ok = false;
        continue;
      }
      values[idx] = value;
    }
    if (!entries_ok) continue;

    Cpt& cpt = cpts[v->name];
    if (cpt.variable.empty()) {
      cpt.variable = v->name;
      cpt.parents = v->parents;
      cpt.outcomes = v->domain.labels;
    }
    cpt.rows.push_back({key, std::move(values)});
    row_locations.insert({{v->name, key}, {row_decl.line, row_decl.column}});
  }

  for (const Variable& v : net.variables) {
    const auto it = cpts.find(v.name);
    if (it != cpts.end()) net.cpts.push_back(std::move(it->second));
  }
  return net;
}

}  // namespace

ModelDocument scan_document(std::string_view text, std::vector<Diagnostic>& diagnostics) {
  return scan(text, diagnostics);
}

std::string ParseResult::diagnostics_to_string() const {
  std::ostringstream os;
  for (const Diagnostic& d : diagnostics) os << d.to_string() << '\n';
  return os.str();
}

ParseResult parse_model(std::string_view text) {
  ParseResult result;
  const ModelDocument doc = scan(text, result.diagnostics);
  // Statements that failed to scan are gone, so a semantic pass over the
  // remainder would mostly chase ghosts; stop at the syntax report.
  if (!result.diagnostics.empty()) return result;

  std::map<std::string, RowLocation> var_locations;
  std::map<std::pair<std::string, std::vector<std::string>>, RowLocation> row_locations;
  Network net = assemble(doc, result.diagnostics, var_locations, row_locations);

  // Validation always runs, even with assembly errors present, so that
  // independent problems (an unknown parent here, a bad row sum there) all
  // surface in one pass.
  const ValidationReport report = validate_network(net);
  for (const Violation& violation : report.violations) {
    RowLocation loc{0, 0};
    if (violation.row_key.has_value()) {
      const auto it = row_locations.find({violation.variable, *violation.row_key});
      if (it != row_locations.end()) loc = it->second;
    }
    if (loc.line == 0) {
      const auto it = var_locations.find(violation.variable);
      if (it != var_locations.end()) loc = it->second;
    }
    std::string message = violation.reason;
    if (!violation.variable.empty()) message = violation.variable + ": " + message;
    result.diagnostics.push_back({loc.line, loc.column, std::move(message)});
  }
  if (!result.diagnostics.empty()) return result;

  result.network = std::move(net);
  return result;
}

std::string serialize(const Network& net) {
  std::ostringstream os;
  os << "network " << (net.name.empty() ? "net" : net.name) << '\n';

  for (const Variable& v : net.variables) {
    os << "var " << v.name << ' ' << to_string(v.kind) << " {";
    for (const std::string& label : v.domain.labels) os << ' ' << label;
    os << " }";
    if (!v.parents.empty()) {
      os << " <-";
      for (const std::string& p : v.parents) os << ' ' << p;
    }
    os << '\n';
  }

  for (const Variable& v : net.variables) {
    const Cpt* cpt = net.find_cpt(v.name);
    if (cpt == nullptr) {
      throw StructuralError("serialize: variable " + v.name + " has no CPT");
    }
    std::vector<const OutcomeDomain*> parent_domains;
    for (const std::string& p : v.parents) {
      const Variable* pv = net.find_variable(p);
      if (pv == nullptr) throw StructuralError("serialize: unknown parent " + p);
      parent_domains.push_back(&pv->domain);
    }

    // Odometer over the parent product space, first parent most significant.
    std::vector<std::size_t> idx(parent_domains.size(), 0);
    const auto advance = [&]() -> bool {  // false once the odometer wraps
      for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < parent_domains[k]->labels.size()) return true;
        idx[k] = 0;
      }
      return false;
    };
    while (true) {
      std::vector<std::string> key;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        key.push_back(parent_domains[i]->labels[idx[i]]);
      }
      const CptRow* row = cpt->find_row(key);
      if (row == nullptr || row->values.size() != v.domain.size()) {
        throw StructuralError("serialize: CPT of " + v.name +
                              " does not cover its parent space");
      }
      os << "cpt " << v.name;
      if (!key.empty()) {
        os << " |";
        for (std::size_t i = 0; i < key.size(); ++i) {
          os << (i == 0 ? " " : ", ") << v.parents[i] << '=' << key[i];
        }
      }
      os << " :";
      for (std::size_t i = 0; i < v.domain.size(); ++i) {
        os << (i == 0 ? " " : ", ") << v.domain.labels[i] << '='
           << row->values[i].to_string();
      }
      os << '\n';
      if (!advance()) break;
    }
  }
  return os.str();
}

}  // namespace pgm::modelfmt
