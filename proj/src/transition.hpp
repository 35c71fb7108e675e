#ifndef SEQTREE_TRANSITION_HPP
#define SEQTREE_TRANSITION_HPP

#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "ast.hpp"
#include "grammar.hpp"

namespace seqtree {

enum class ActionKind { ApplyRule, Reduce, GenToken };

struct Action {
  ActionKind kind = ActionKind::Reduce;
  std::string payload;  // constructor name or token value

  static Action apply_rule(std::string ctor) { return {ActionKind::ApplyRule, std::move(ctor)}; }
  static Action reduce() { return {ActionKind::Reduce, {}}; }
  static Action gen_token(std::string tok) { return {ActionKind::GenToken, std::move(tok)}; }

  bool operator==(const Action&) const = default;

  // Text form: APPLY[Ctor] | REDUCE | GEN[token]
  std::string to_text() const;
  static Action from_text(const std::string& line);
};

std::string actions_to_text(const std::vector<Action>& actions);
std::vector<Action> actions_from_text(const std::string& text);

// One position in a derivation. parent_index is the 1-based index of the
// ApplyRule step that opened the frontier field this action fills (0 for the
// first action).
struct ActionStep {
  int t = 0;  // 1-based
  Action action;
  int parent_index = 0;
};

enum class Traversal { Preorder, BreadthFirst };

struct TransitionError : std::runtime_error {
  TransitionError(int step, const std::string& what, std::string expected = {})
      : std::runtime_error("step " + std::to_string(step) + ": " + what +
                           (expected.empty() ? "" : " (expected: " + expected + ")")),
        step(step),
        expected(std::move(expected)) {}
  int step;
  std::string expected;
};

// The actions accepted at the current frontier field.
struct ValidActions {
  std::vector<std::string> apply_ctors;  // legal ApplyRule payloads
  bool gen_token = false;                // GenToken[v] legal for any token v
  bool reduce = false;
  bool complete = false;                 // derivation finished, no action legal

  bool allows(const Action& a) const;
  std::string describe() const;
};

// Incremental derivation state. Owns the partially-built tree; exactly one
// frontier field is active at a time (stack discipline for pre-order, queue
// discipline for breadth-first). Single-owner mutable during one decode.
class FrontierState {
 public:
  FrontierState(const Grammar& grammar, Traversal traversal);

  bool complete() const;
  int steps_taken() const { return step_; }
  ValidActions valid_actions() const;

  struct FieldInfo {
    std::string type;
    Cardinality card = Cardinality::Single;
    int owner_step = 0;         // ApplyRule step that owns the field; 0 at the root
    std::string owner_ctor;     // empty at the root
    size_t field_pos = 0;
    int emitted = 0;
  };
  FieldInfo frontier() const;  // throws TransitionError if complete

  // Applies one action, returning its parent index (the owner_step of the
  // frontier field it filled). Throws TransitionError on illegal actions.
  int advance(const Action& action);

  // The finished tree; throws TransitionError when the frontier is non-empty.
  AstNode finish() const;

  const Grammar& grammar() const { return grammar_; }
  Traversal traversal() const { return traversal_; }

 private:
  struct BuildNode {
    std::string ctor;
    std::string token;
    int apply_step = 0;
    std::vector<std::vector<int>> fields;  // arena indices
    bool is_token() const { return ctor.empty(); }
  };
  struct Open {
    int node = -1;       // arena index; -1 for the root pseudo-field
    size_t field = 0;
    int emitted = 0;
  };

  const Field& field_decl(const Open& o) const;
  int owner_step(const Open& o) const;
  void close_filled(Open& o);           // advance past completed fields
  void settle();                        // drop finished open nodes
  AstNode build(int node) const;

  const Grammar& grammar_;
  Traversal traversal_;
  std::vector<BuildNode> arena_;
  std::deque<Open> open_;  // back = active for preorder, front = active for BFS
  int root_node_ = -1;
  int step_ = 0;
  Field root_field_;  // pseudo-field holding the root
};

// Emits the action sequence for a validated AST under the given traversal.
// Pre-order emits each node's action before any descendant's; breadth-first
// emits whole levels in order. Throws TransitionError on invalid ASTs.
std::vector<ActionStep> ast_to_actions(const Grammar& grammar, const AstNode& root,
                                       Traversal traversal);

// Reconstructs the AST from a grammar-legal action sequence. Throws
// TransitionError for illegal actions (with the expected set), premature end
// (listing open fields), or trailing actions.
AstNode actions_to_ast(const Grammar& grammar, const std::vector<Action>& actions,
                       Traversal traversal);

// Replays a raw action list, attaching step indices and parent links.
std::vector<ActionStep> replay_actions(const Grammar& grammar, const std::vector<Action>& actions,
                                       Traversal traversal);

}  // namespace seqtree

#endif
