#ifndef SEQTREE_GRAMMAR_HPP
#define SEQTREE_GRAMMAR_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqtree {

// Error with a source position, thrown by Grammar::parse.
struct GrammarError : std::runtime_error {
  GrammarError(int line, int col, const std::string& what)
      : std::runtime_error("grammar error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  int line;
  int col;
};

enum class Cardinality { Single, Optional, Multiple };

const char* cardinality_suffix(Cardinality c);  // "", "?", "*"

struct Field {
  std::string name;
  std::string type;
  Cardinality card = Cardinality::Single;
};

struct Constructor {
  std::string name;
  std::string result_type;
  std::vector<Field> fields;
};

// An ASDL-style grammar: composite types with constructors, primitive types,
// and a distinguished root type. Immutable after parse; safe to share.
//
// Text format, one rule per line (a line starting with '|' continues the
// previous rule; '#' starts a comment):
//
//   primitive identifier, string
//   root expr
//   expr = Len(expr arg) | And(expr* conjuncts)
//   var  = Var(identifier name)
//
// Field cardinality markers follow the type name: '*' = multiple, '?' =
// optional. Without a "root" directive the first declared composite type is
// the root.
class Grammar {
 public:
  static Grammar parse(const std::string& text);

  const std::string& root_type() const { return root_type_; }
  bool is_primitive(const std::string& type) const;
  bool is_composite(const std::string& type) const;

  // Declaration order.
  const std::vector<Constructor>& constructors() const { return ctors_; }
  const std::vector<std::string>& primitive_types() const { return primitives_; }
  const std::vector<std::string>& composite_types() const { return composites_; }

  const Constructor* find_constructor(const std::string& name) const;
  const Constructor& constructor(const std::string& name) const;

  // Names of constructors whose result type is `type`, in declaration order.
  const std::vector<std::string>& constructors_of(const std::string& type) const;

  // Human-readable constructor table.
  std::string describe() const;

 private:
  std::vector<Constructor> ctors_;
  std::vector<std::string> primitives_;
  std::vector<std::string> composites_;
  std::string root_type_;
  std::map<std::string, size_t> ctor_index_;
  std::map<std::string, std::vector<std::string>> by_result_type_;
};

}  // namespace seqtree

#endif
