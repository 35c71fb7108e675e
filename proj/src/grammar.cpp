#include "grammar.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace seqtree {

const char* cardinality_suffix(Cardinality c) {
  switch (c) {
    case Cardinality::Single: return "";
    case Cardinality::Optional: return "?";
    case Cardinality::Multiple: return "*";
  }
  return "";
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Cursor over one logical line, tracking 1-based column for errors.
struct LineCursor {
  const std::string& text;
  int line;
  size_t pos = 0;

  int col() const { return static_cast<int>(pos) + 1; }
  bool eol() {
    skip_ws();
    return pos >= text.size();
  }
  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c)
      throw GrammarError(line, col(), std::string("expected '") + c + "'");
    ++pos;
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !is_ident_start(text[pos]))
      throw GrammarError(line, col(), "expected identifier");
    size_t start = pos;
    while (pos < text.size() && is_ident_char(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }
};

struct PendingField {
  Field field;
  int line;
  int col;
};

}  // namespace

Grammar Grammar::parse(const std::string& text) {
  Grammar g;
  std::string root_directive;
  int root_directive_line = 0;
  std::set<std::string> primitive_set;
  std::vector<std::pair<PendingField, std::string>> pending;  // field + owning ctor

  // Split into logical lines: a line starting with '|' continues the previous.
  std::vector<std::pair<int, std::string>> logical;
  {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      size_t first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      size_t last = raw.find_last_not_of(" \t\r");
      std::string trimmed = raw.substr(first, last - first + 1);
      if (trimmed[0] == '|' && !logical.empty()) {
        logical.back().second += " " + trimmed;
      } else {
        logical.emplace_back(lineno, trimmed);
      }
    }
  }

  std::string current_type;  // for error context only
  for (auto& [lineno, content] : logical) {
    LineCursor cur{content, lineno};
    std::string head = cur.ident();
    if (head == "primitive") {
      do {
        std::string name = cur.ident();
        primitive_set.insert(name);
        if (std::find(g.primitives_.begin(), g.primitives_.end(), name) == g.primitives_.end())
          g.primitives_.push_back(name);
      } while (cur.consume(','));
      if (!cur.eol()) throw GrammarError(lineno, cur.col(), "trailing text after primitive list");
      continue;
    }
    if (head == "root") {
      root_directive = cur.ident();
      root_directive_line = lineno;
      if (!cur.eol()) throw GrammarError(lineno, cur.col(), "trailing text after root directive");
      continue;
    }

    // TypeName = Ctor(fields) | Ctor(fields) | ...
    current_type = head;
    cur.expect('=');
    if (std::find(g.composites_.begin(), g.composites_.end(), current_type) == g.composites_.end())
      g.composites_.push_back(current_type);
    do {
      int ctor_col = cur.col();
      Constructor ctor;
      ctor.name = cur.ident();
      ctor.result_type = current_type;
      if (g.ctor_index_.count(ctor.name))
        throw GrammarError(lineno, ctor_col, "duplicate constructor '" + ctor.name + "'");
      cur.expect('(');
      std::set<std::string> field_names;
      if (!cur.consume(')')) {
        do {
          PendingField pf;
          pf.line = lineno;
          pf.col = cur.col();
          pf.field.type = cur.ident();
          if (cur.consume('*'))
            pf.field.card = Cardinality::Multiple;
          else if (cur.consume('?'))
            pf.field.card = Cardinality::Optional;
          pf.field.name = cur.ident();
          if (!field_names.insert(pf.field.name).second)
            throw GrammarError(lineno, pf.col,
                               "duplicate field name '" + pf.field.name + "' in constructor '" +
                                   ctor.name + "'");
          ctor.fields.push_back(pf.field);
          pending.emplace_back(pf, ctor.name);
        } while (cur.consume(','));
        cur.expect(')');
      }
      g.ctor_index_[ctor.name] = g.ctors_.size();
      g.ctors_.push_back(std::move(ctor));
    } while (cur.consume('|'));
    if (!cur.eol()) throw GrammarError(lineno, cur.col(), "trailing text after rule");
  }

  if (g.composites_.empty())
    throw GrammarError(0, 0, "no root type: grammar declares no composite type");

  std::set<std::string> composite_set(g.composites_.begin(), g.composites_.end());
  for (auto& p : composite_set)
    if (primitive_set.count(p))
      throw GrammarError(0, 0, "type '" + p + "' declared both primitive and composite");

  for (auto& [pf, ctor_name] : pending) {
    if (!composite_set.count(pf.field.type) && !primitive_set.count(pf.field.type))
      throw GrammarError(pf.line, pf.col,
                         "undeclared type '" + pf.field.type + "' in constructor '" + ctor_name +
                             "'");
  }

  if (!root_directive.empty()) {
    if (!composite_set.count(root_directive))
      throw GrammarError(root_directive_line, 1,
                         "root type '" + root_directive + "' is not a declared composite type");
    g.root_type_ = root_directive;
  } else {
    g.root_type_ = g.composites_.front();
  }

  for (auto& c : g.ctors_) g.by_result_type_[c.result_type].push_back(c.name);
  return g;
}

bool Grammar::is_primitive(const std::string& type) const {
  return std::find(primitives_.begin(), primitives_.end(), type) != primitives_.end();
}

bool Grammar::is_composite(const std::string& type) const {
  return std::find(composites_.begin(), composites_.end(), type) != composites_.end();
}

const Constructor* Grammar::find_constructor(const std::string& name) const {
  auto it = ctor_index_.find(name);
  return it == ctor_index_.end() ? nullptr : &ctors_[it->second];
}

const Constructor& Grammar::constructor(const std::string& name) const {
  const Constructor* c = find_constructor(name);
  if (!c) throw std::out_of_range("unknown constructor '" + name + "'");
  return *c;
}

const std::vector<std::string>& Grammar::constructors_of(const std::string& type) const {
  static const std::vector<std::string> empty;
  auto it = by_result_type_.find(type);
  return it == by_result_type_.end() ? empty : it->second;
}

std::string Grammar::describe() const {
  std::ostringstream out;
  out << "root: " << root_type_ << "\n";
  out << "primitives:";
  for (auto& p : primitives_) out << " " << p;
  out << "\nconstructors:\n";
  for (auto& c : ctors_) {
    out << "  " << c.name << "(";
    for (size_t i = 0; i < c.fields.size(); ++i) {
      if (i) out << ", ";
      out << c.fields[i].type << cardinality_suffix(c.fields[i].card) << " " << c.fields[i].name;
    }
    out << ") -> " << c.result_type << "\n";
  }
  return out.str();
}

}  // namespace seqtree
