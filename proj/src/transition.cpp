#include "transition.hpp"

#include <sstream>

namespace seqtree {

std::string Action::to_text() const {
  switch (kind) {
    case ActionKind::ApplyRule: return "APPLY[" + payload + "]";
    case ActionKind::Reduce: return "REDUCE";
    case ActionKind::GenToken: return "GEN[" + payload + "]";
  }
  return {};
}

Action Action::from_text(const std::string& line) {
  if (line == "REDUCE") return reduce();
  auto bracketed = [&](const std::string& prefix) -> std::string {
    // prefix + payload + ']'
    return line.substr(prefix.size(), line.size() - prefix.size() - 1);
  };
  if (line.size() >= 7 && line.rfind("APPLY[", 0) == 0 && line.back() == ']')
    return apply_rule(bracketed("APPLY["));
  if (line.size() >= 5 && line.rfind("GEN[", 0) == 0 && line.back() == ']')
    return gen_token(bracketed("GEN["));
  throw std::invalid_argument("unrecognized action line: '" + line + "'");
}

std::string actions_to_text(const std::vector<Action>& actions) {
  std::string out;
  for (auto& a : actions) out += a.to_text() + "\n";
  return out;
}

std::vector<Action> actions_from_text(const std::string& text) {
  std::vector<Action> actions;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    size_t last = line.find_last_not_of(" \t\r");
    actions.push_back(Action::from_text(line.substr(first, last - first + 1)));
  }
  return actions;
}

bool ValidActions::allows(const Action& a) const {
  if (complete) return false;
  switch (a.kind) {
    case ActionKind::ApplyRule:
      for (auto& c : apply_ctors)
        if (c == a.payload) return true;
      return false;
    case ActionKind::Reduce: return reduce;
    case ActionKind::GenToken: return gen_token;
  }
  return false;
}

std::string ValidActions::describe() const {
  if (complete) return "<complete>";
  std::string out;
  for (auto& c : apply_ctors) out += (out.empty() ? "" : " | ") + ("ApplyRule[" + c + "]");
  if (gen_token) out += (out.empty() ? "" : " | ") + std::string("GenToken[*]");
  if (reduce) out += (out.empty() ? "" : " | ") + std::string("Reduce");
  return out;
}

FrontierState::FrontierState(const Grammar& grammar, Traversal traversal)
    : grammar_(grammar), traversal_(traversal) {
  root_field_ = Field{"<root>", grammar.root_type(), Cardinality::Single};
  open_.push_back(Open{-1, 0, 0});
}

const Field& FrontierState::field_decl(const Open& o) const {
  if (o.node < 0) return root_field_;
  return grammar_.constructor(arena_[o.node].ctor).fields[o.field];
}

int FrontierState::owner_step(const Open& o) const {
  return o.node < 0 ? 0 : arena_[o.node].apply_step;
}

bool FrontierState::complete() const { return open_.empty(); }

void FrontierState::settle() {
  while (!open_.empty()) {
    Open& active = traversal_ == Traversal::Preorder ? open_.back() : open_.front();
    size_t nfields = active.node < 0
                         ? 1
                         : grammar_.constructor(arena_[active.node].ctor).fields.size();
    if (active.field < nfields) return;
    if (traversal_ == Traversal::Preorder)
      open_.pop_back();
    else
      open_.pop_front();
  }
}

FrontierState::FieldInfo FrontierState::frontier() const {
  if (complete()) throw TransitionError(step_ + 1, "derivation already complete");
  const Open& active = traversal_ == Traversal::Preorder ? open_.back() : open_.front();
  const Field& f = field_decl(active);
  FieldInfo info;
  info.type = f.type;
  info.card = f.card;
  info.owner_step = owner_step(active);
  info.owner_ctor = active.node < 0 ? "" : arena_[active.node].ctor;
  info.field_pos = active.field;
  info.emitted = active.emitted;
  return info;
}

ValidActions FrontierState::valid_actions() const {
  ValidActions va;
  if (complete()) {
    va.complete = true;
    return va;
  }
  const Open& active = traversal_ == Traversal::Preorder ? open_.back() : open_.front();
  const Field& f = field_decl(active);
  size_t max = f.card == Cardinality::Multiple ? SIZE_MAX : 1;
  bool below_max = static_cast<size_t>(active.emitted) < max;
  if (grammar_.is_primitive(f.type)) {
    va.gen_token = below_max;
  } else if (below_max) {
    va.apply_ctors = grammar_.constructors_of(f.type);
  }
  va.reduce = f.card == Cardinality::Optional || f.card == Cardinality::Multiple;
  return va;
}

int FrontierState::advance(const Action& action) {
  if (complete())
    throw TransitionError(step_ + 1, "trailing action '" + action.to_text() +
                                         "' after completed derivation");
  ValidActions va = valid_actions();
  if (!va.allows(action))
    throw TransitionError(step_ + 1, "illegal action '" + action.to_text() + "'", va.describe());
  if (action.kind == ActionKind::ApplyRule) {
    const Constructor& ctor = grammar_.constructor(action.payload);
    const Field& f = field_decl(traversal_ == Traversal::Preorder ? open_.back() : open_.front());
    if (ctor.result_type != f.type)
      throw TransitionError(step_ + 1,
                            "constructor '" + action.payload + "' builds type '" +
                                ctor.result_type + "', frontier field needs '" + f.type + "'",
                            va.describe());
  }

  int t = ++step_;
  Open& active = traversal_ == Traversal::Preorder ? open_.back() : open_.front();
  int parent = owner_step(active);
  const Field f = field_decl(active);

  auto attach = [&](int idx) {
    if (active.node < 0)
      root_node_ = idx;
    else
      arena_[active.node].fields[active.field].push_back(idx);
    ++active.emitted;
    if (f.card == Cardinality::Single) {
      ++active.field;
      active.emitted = 0;
    }
  };

  switch (action.kind) {
    case ActionKind::ApplyRule: {
      const Constructor& ctor = grammar_.constructor(action.payload);
      BuildNode node;
      node.ctor = action.payload;
      node.apply_step = t;
      node.fields.resize(ctor.fields.size());
      int idx = static_cast<int>(arena_.size());
      arena_.push_back(std::move(node));
      attach(idx);
      open_.push_back(Open{idx, 0, 0});
      break;
    }
    case ActionKind::GenToken: {
      BuildNode node;
      node.token = action.payload;
      node.apply_step = t;
      int idx = static_cast<int>(arena_.size());
      arena_.push_back(std::move(node));
      attach(idx);
      break;
    }
    case ActionKind::Reduce: {
      ++active.field;
      active.emitted = 0;
      break;
    }
  }
  settle();
  return parent;
}

AstNode FrontierState::build(int node) const {
  const BuildNode& b = arena_[node];
  if (b.is_token()) return AstNode::make_token(b.token);
  std::vector<std::vector<AstNode>> fields(b.fields.size());
  for (size_t i = 0; i < b.fields.size(); ++i)
    for (int child : b.fields[i]) fields[i].push_back(build(child));
  return AstNode::make(b.ctor, std::move(fields));
}

AstNode FrontierState::finish() const {
  if (!complete() || root_node_ < 0) {
    std::string open_fields;
    for (const Open& o : open_) {
      const Field& f = field_decl(o);
      if (!open_fields.empty()) open_fields += ", ";
      open_fields += (o.node < 0 ? "<root>" : arena_[o.node].ctor) + "." + f.name;
    }
    throw TransitionError(step_, "premature end of actions; open fields: " +
                                     (open_fields.empty() ? "<root>" : open_fields));
  }
  return build(root_node_);
}

namespace {

struct PreorderEmitter {
  const Grammar& grammar;
  std::vector<ActionStep> steps;

  void emit(const Action& a, int parent) {
    int t = static_cast<int>(steps.size()) + 1;
    steps.push_back(ActionStep{t, a, parent});
  }

  void node(const AstNode& n, int parent_step) {
    if (n.is_token()) {
      emit(Action::gen_token(n.token), parent_step);
      return;
    }
    emit(Action::apply_rule(n.ctor), parent_step);
    int my_step = static_cast<int>(steps.size());
    const Constructor& ctor = grammar.constructor(n.ctor);
    for (size_t i = 0; i < ctor.fields.size(); ++i) {
      for (auto& child : n.fields[i]) node(child, my_step);
      if (ctor.fields[i].card != Cardinality::Single) emit(Action::reduce(), my_step);
    }
  }
};

struct BfsEmitter {
  const Grammar& grammar;
  std::vector<ActionStep> steps;
  std::deque<std::pair<const AstNode*, int>> queue;  // node + its ApplyRule step

  void emit(const Action& a, int parent) {
    int t = static_cast<int>(steps.size()) + 1;
    steps.push_back(ActionStep{t, a, parent});
  }

  void run(const AstNode& root) {
    emit(Action::apply_rule(root.ctor), 0);
    queue.emplace_back(&root, 1);
    while (!queue.empty()) {
      auto [n, my_step] = queue.front();
      queue.pop_front();
      const Constructor& ctor = grammar.constructor(n->ctor);
      for (size_t i = 0; i < ctor.fields.size(); ++i) {
        for (auto& child : n->fields[i]) {
          if (child.is_token()) {
            emit(Action::gen_token(child.token), my_step);
          } else {
            emit(Action::apply_rule(child.ctor), my_step);
            queue.emplace_back(&child, static_cast<int>(steps.size()));
          }
        }
        if (ctor.fields[i].card != Cardinality::Single) emit(Action::reduce(), my_step);
      }
    }
  }
};

}  // namespace

std::vector<ActionStep> ast_to_actions(const Grammar& grammar, const AstNode& root,
                                       Traversal traversal) {
  ValidityReport report = validate_ast(grammar, root);
  if (!report.ok)
    throw TransitionError(0, "invalid AST at node " + std::to_string(report.node_id) + ": " +
                                 report.rule);
  if (traversal == Traversal::Preorder) {
    PreorderEmitter e{grammar};
    e.node(root, 0);
    return std::move(e.steps);
  }
  BfsEmitter e{grammar};
  e.run(root);
  return std::move(e.steps);
}

AstNode actions_to_ast(const Grammar& grammar, const std::vector<Action>& actions,
                       Traversal traversal) {
  FrontierState state(grammar, traversal);
  for (auto& a : actions) state.advance(a);
  return state.finish();
}

std::vector<ActionStep> replay_actions(const Grammar& grammar, const std::vector<Action>& actions,
                                       Traversal traversal) {
  FrontierState state(grammar, traversal);
  std::vector<ActionStep> steps;
  steps.reserve(actions.size());
  for (auto& a : actions) {
    int parent = state.advance(a);
    steps.push_back(ActionStep{state.steps_taken(), a, parent});
  }
  state.finish();  // reject premature sequences
  return steps;
}

}  // namespace seqtree
