#ifndef SEQTREE_AST_HPP
#define SEQTREE_AST_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "grammar.hpp"
#include "json.hpp"

namespace seqtree {

// Typed AST node: either a constructor application with per-field ordered
// child lists, or a primitive token leaf. Immutable by convention once built.
struct AstNode {
  std::string ctor;  // empty => token leaf
  std::string token;
  std::vector<std::vector<AstNode>> fields;  // one child list per constructor field

  bool is_token() const { return ctor.empty(); }

  static AstNode make_token(std::string value) {
    AstNode n;
    n.token = std::move(value);
    return n;
  }
  static AstNode make(std::string ctor_name, std::vector<std::vector<AstNode>> field_children = {}) {
    AstNode n;
    n.ctor = std::move(ctor_name);
    n.fields = std::move(field_children);
    return n;
  }

  bool operator==(const AstNode& other) const {
    return ctor == other.ctor && token == other.token && fields == other.fields;
  }

  // Total node count (this node plus all descendants).
  size_t size() const;
};

struct ValidityReport {
  bool ok = true;
  int node_id = -1;    // pre-order id of the first violating node
  std::string rule;    // violated rule, empty when ok
};

// Checks conformance to the grammar: arities per cardinality, token leaves
// only under primitive fields, child constructor result types matching field
// types. Returns the first violation in pre-order.
ValidityReport validate_ast(const Grammar& grammar, const AstNode& root);

// JSON form: {"ctor": name, "fields": {fieldName: [children...]}} for
// composites, {"token": value} for leaves. Field names come from the grammar.
nlohmann::ordered_json ast_to_json(const Grammar& grammar, const AstNode& node);
AstNode ast_from_json(const Grammar& grammar, const nlohmann::ordered_json& j);

struct CodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Surface syntax for the deterministic AST<->code mapping: parenthesized
// s-expressions with a literal head symbol per constructor. Constructors
// listed as bare render as their single primitive token with no parentheses
// (one bare constructor per composite type at most, so parsing stays
// deterministic).
class CodeSyntax {
 public:
  void add_head(const std::string& ctor, const std::string& head);
  void add_bare(const std::string& ctor, const std::string& result_type);

  const std::string* head_of(const std::string& ctor) const;
  const std::string* ctor_of_head(const std::string& head) const;
  const std::string* bare_ctor_of_type(const std::string& type) const;
  bool is_bare(const std::string& ctor) const;

 private:
  std::map<std::string, std::string> head_by_ctor_;
  std::map<std::string, std::string> ctor_by_head_;
  std::map<std::string, std::string> bare_by_type_;
  std::map<std::string, bool> bare_ctors_;
};

// Splits code into tokens; '(' and ')' are their own tokens regardless of
// surrounding whitespace.
std::vector<std::string> tokenize_code(const std::string& code);

// Canonical form: tokens joined by single spaces.
std::string normalize_code(const std::string& code);

// Deterministic rendering of a validated AST into s-expression text.
// Throws CodeError for constructors with no rendering template or token
// values that would not re-tokenize (whitespace or parentheses).
std::string ast_to_code(const AstNode& root, const CodeSyntax& syntax);

// Inverse of ast_to_code: parses one s-expression over the grammar's head
// symbols. Throws CodeError on tokenization errors, unknown head symbols, or
// arity/type mismatches.
AstNode code_to_ast(const Grammar& grammar, const CodeSyntax& syntax, const std::string& code);

}  // namespace seqtree

#endif
