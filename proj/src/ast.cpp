#include "ast.hpp"

#include <sstream>

namespace seqtree {

size_t AstNode::size() const {
  size_t n = 1;
  for (auto& f : fields)
    for (auto& c : f) n += c.size();
  return n;
}

namespace {

struct Validator {
  const Grammar& grammar;
  ValidityReport report;
  int next_id = 0;

  // Returns false once a violation is recorded.
  bool fail(int id, std::string rule) {
    report.ok = false;
    report.node_id = id;
    report.rule = std::move(rule);
    return false;
  }

  bool check(const AstNode& node, const std::string& expected_type) {
    int id = next_id++;
    bool primitive = grammar.is_primitive(expected_type);
    if (node.is_token()) {
      if (!primitive)
        return fail(id, "token node under composite-typed field '" + expected_type + "'");
      return true;
    }
    if (primitive)
      return fail(id, "composite node '" + node.ctor + "' under primitive-typed field '" +
                          expected_type + "'");
    const Constructor* ctor = grammar.find_constructor(node.ctor);
    if (!ctor) return fail(id, "unknown constructor '" + node.ctor + "'");
    if (ctor->result_type != expected_type)
      return fail(id, "constructor '" + node.ctor + "' has result type '" + ctor->result_type +
                          "', expected '" + expected_type + "'");
    if (node.fields.size() != ctor->fields.size())
      return fail(id, "constructor '" + node.ctor + "' expects " +
                          std::to_string(ctor->fields.size()) + " fields, node has " +
                          std::to_string(node.fields.size()));
    for (size_t i = 0; i < ctor->fields.size(); ++i) {
      const Field& f = ctor->fields[i];
      size_t n = node.fields[i].size();
      bool arity_ok = (f.card == Cardinality::Single && n == 1) ||
                      (f.card == Cardinality::Optional && n <= 1) ||
                      (f.card == Cardinality::Multiple);
      if (!arity_ok)
        return fail(id, "field '" + f.name + "' of '" + node.ctor + "' has cardinality '" +
                            f.type + cardinality_suffix(f.card) + "' but " + std::to_string(n) +
                            " children");
    }
    for (size_t i = 0; i < ctor->fields.size(); ++i)
      for (auto& child : node.fields[i])
        if (!check(child, ctor->fields[i].type)) return false;
    return true;
  }
};

}  // namespace

ValidityReport validate_ast(const Grammar& grammar, const AstNode& root) {
  Validator v{grammar};
  v.check(root, grammar.root_type());
  return v.report;
}

nlohmann::ordered_json ast_to_json(const Grammar& grammar, const AstNode& node) {
  if (node.is_token()) return nlohmann::ordered_json{{"token", node.token}};
  nlohmann::ordered_json j;
  j["ctor"] = node.ctor;
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();
  const Constructor& ctor = grammar.constructor(node.ctor);
  for (size_t i = 0; i < ctor.fields.size() && i < node.fields.size(); ++i) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto& child : node.fields[i]) arr.push_back(ast_to_json(grammar, child));
    fields[ctor.fields[i].name] = std::move(arr);
  }
  j["fields"] = std::move(fields);
  return j;
}

AstNode ast_from_json(const Grammar& grammar, const nlohmann::ordered_json& j) {
  if (j.contains("token")) return AstNode::make_token(j.at("token").get<std::string>());
  std::string name = j.at("ctor").get<std::string>();
  const Constructor& ctor = grammar.constructor(name);
  std::vector<std::vector<AstNode>> fields(ctor.fields.size());
  const auto& jf = j.at("fields");
  for (size_t i = 0; i < ctor.fields.size(); ++i) {
    auto it = jf.find(ctor.fields[i].name);
    if (it == jf.end()) continue;
    for (auto& cj : *it) fields[i].push_back(ast_from_json(grammar, cj));
  }
  return AstNode::make(std::move(name), std::move(fields));
}

void CodeSyntax::add_head(const std::string& ctor, const std::string& head) {
  head_by_ctor_[ctor] = head;
  ctor_by_head_[head] = ctor;
}

void CodeSyntax::add_bare(const std::string& ctor, const std::string& result_type) {
  bare_ctors_[ctor] = true;
  bare_by_type_[result_type] = ctor;
}

const std::string* CodeSyntax::head_of(const std::string& ctor) const {
  auto it = head_by_ctor_.find(ctor);
  return it == head_by_ctor_.end() ? nullptr : &it->second;
}

const std::string* CodeSyntax::ctor_of_head(const std::string& head) const {
  auto it = ctor_by_head_.find(head);
  return it == ctor_by_head_.end() ? nullptr : &it->second;
}

const std::string* CodeSyntax::bare_ctor_of_type(const std::string& type) const {
  auto it = bare_by_type_.find(type);
  return it == bare_by_type_.end() ? nullptr : &it->second;
}

bool CodeSyntax::is_bare(const std::string& ctor) const {
  auto it = bare_ctors_.find(ctor);
  return it != bare_ctors_.end() && it->second;
}

std::vector<std::string> tokenize_code(const std::string& code) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  for (char c : code) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '(' || c == ')') {
      flush();
      tokens.push_back(std::string(1, c));
    } else {
      cur += c;
    }
  }
  flush();
  return tokens;
}

std::string normalize_code(const std::string& code) {
  std::vector<std::string> tokens = tokenize_code(code);
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

namespace {

void check_token_value(const std::string& value) {
  if (value.empty()) throw CodeError("empty token value");
  for (char c : value)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')')
      throw CodeError("token value '" + value + "' contains whitespace or parentheses");
}

void render(const AstNode& node, const CodeSyntax& syntax, std::string& out) {
  if (node.is_token()) {
    check_token_value(node.token);
    out += node.token;
    return;
  }
  if (syntax.is_bare(node.ctor)) {
    // Bare constructor: render its single token child with no parentheses.
    for (auto& f : node.fields)
      for (auto& c : f) {
        render(c, syntax, out);
        return;
      }
    throw CodeError("bare constructor '" + node.ctor + "' has no token child");
  }
  const std::string* head = syntax.head_of(node.ctor);
  if (!head) throw CodeError("no rendering template for constructor '" + node.ctor + "'");
  out += "( " + *head;
  for (auto& f : node.fields)
    for (auto& c : f) {
      out += ' ';
      render(c, syntax, out);
    }
  out += " )";
}

// Untyped s-expression form, lowered to AstNode once field types are known.
struct Form {
  bool atom;
  std::string text;          // atom text or head symbol
  std::vector<Form> children;
};

struct FormParser {
  const std::vector<std::string>& tokens;
  size_t pos = 0;

  bool done() const { return pos >= tokens.size(); }
  const std::string& peek() const { return tokens[pos]; }

  Form parse() {
    if (done()) throw CodeError("unexpected end of input");
    if (peek() == ")") throw CodeError("unexpected ')'");
    if (peek() == "(") {
      ++pos;
      if (done() || peek() == "(" || peek() == ")")
        throw CodeError("expected head symbol after '('");
      Form f{false, tokens[pos++], {}};
      while (!done() && peek() != ")") f.children.push_back(parse());
      if (done()) throw CodeError("missing ')'");
      ++pos;  // ')'
      return f;
    }
    return Form{true, tokens[pos++], {}};
  }
};

AstNode lower(const Grammar& grammar, const CodeSyntax& syntax, const Form& form,
              const std::string& expected_type);

// Assigns parsed children to constructor fields left to right, giving
// variable-cardinality fields as many children as possible while reserving
// one child per remaining single field.
std::vector<std::vector<AstNode>> assign_fields(const Grammar& grammar, const CodeSyntax& syntax,
                                                const Constructor& ctor,
                                                const std::vector<Form>& children) {
  std::vector<size_t> min_rest(ctor.fields.size() + 1, 0);
  for (size_t i = ctor.fields.size(); i-- > 0;)
    min_rest[i] = min_rest[i + 1] + (ctor.fields[i].card == Cardinality::Single ? 1 : 0);
  if (children.size() < min_rest[0])
    throw CodeError("arity mismatch for '" + ctor.name + "': got " +
                    std::to_string(children.size()) + " children, need at least " +
                    std::to_string(min_rest[0]));

  std::vector<std::vector<AstNode>> fields(ctor.fields.size());
  size_t next = 0;
  for (size_t i = 0; i < ctor.fields.size(); ++i) {
    size_t remaining = children.size() - next;
    size_t take = 0;
    switch (ctor.fields[i].card) {
      case Cardinality::Single:
        if (remaining < 1 + min_rest[i + 1])
          throw CodeError("arity mismatch for '" + ctor.name + "': missing child for field '" +
                          ctor.fields[i].name + "'");
        take = 1;
        break;
      case Cardinality::Optional:
        take = remaining > min_rest[i + 1] ? 1 : 0;
        break;
      case Cardinality::Multiple:
        take = remaining - min_rest[i + 1];
        break;
    }
    for (size_t k = 0; k < take; ++k)
      fields[i].push_back(lower(grammar, syntax, children[next++], ctor.fields[i].type));
  }
  if (next != children.size())
    throw CodeError("arity mismatch for '" + ctor.name + "': " +
                    std::to_string(children.size() - next) + " extra children");
  return fields;
}

AstNode lower(const Grammar& grammar, const CodeSyntax& syntax, const Form& form,
              const std::string& expected_type) {
  if (form.atom) {
    if (grammar.is_primitive(expected_type)) return AstNode::make_token(form.text);
    const std::string* bare = syntax.bare_ctor_of_type(expected_type);
    if (!bare)
      throw CodeError("bare token '" + form.text + "' where type '" + expected_type +
                      "' was expected");
    const Constructor& ctor = grammar.constructor(*bare);
    if (ctor.fields.size() != 1 || !grammar.is_primitive(ctor.fields[0].type))
      throw CodeError("bare constructor '" + *bare + "' must have one primitive field");
    return AstNode::make(*bare, {{AstNode::make_token(form.text)}});
  }
  const std::string* ctor_name = syntax.ctor_of_head(form.text);
  if (!ctor_name) throw CodeError("unknown head symbol '" + form.text + "'");
  const Constructor& ctor = grammar.constructor(*ctor_name);
  if (ctor.result_type != expected_type)
    throw CodeError("head '" + form.text + "' builds type '" + ctor.result_type +
                    "' where '" + expected_type + "' was expected");
  return AstNode::make(*ctor_name, assign_fields(grammar, syntax, ctor, form.children));
}

}  // namespace

std::string ast_to_code(const AstNode& root, const CodeSyntax& syntax) {
  std::string out;
  render(root, syntax, out);
  return out;
}

AstNode code_to_ast(const Grammar& grammar, const CodeSyntax& syntax, const std::string& code) {
  std::vector<std::string> tokens = tokenize_code(code);
  if (tokens.empty()) throw CodeError("tokenization error: empty input");
  FormParser parser{tokens};
  Form form = parser.parse();
  if (!parser.done()) throw CodeError("trailing tokens after expression");
  return lower(grammar, syntax, form, grammar.root_type());
}

}  // namespace seqtree
