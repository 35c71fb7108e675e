#include "corpus.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace seqtree {

namespace {

const char* kToyGrammarText = R"(# lambda-form toy grammar
primitive identifier
root expr
expr = Len(expr arg)
     | Argmax(var bound, expr domain, expr target)
     | And(expr* conjuncts)
     | Loc(var subject, expr? place)
     | Place(var subject)
     | Elevation(var subject)
     | Const(identifier name)
var = Var(identifier name)
)";

const std::vector<std::string> kVarPool = {"$0", "$1", "$2"};
const std::vector<std::string> kConstPool = {"c0", "c1", "c2", "c3", "r0",
                                             "r1", "r2", "s0", "s1", "m0"};

const std::map<std::string, std::vector<std::string>> kSynonyms = {
    {"what", {"what", "which"}},
    {"length", {"length", "size"}},
    {"highest", {"highest", "greatest", "largest"}},
    {"located", {"located", "situated"}},
    {"place", {"place", "spot"}},
    {"elevation", {"elevation", "altitude"}},
    {"among", {"among", "of"}},
};

struct Slot {
  bool is_slot = false;
  size_t field = 0;
  char mode = 's';          // 's' single, '?' optional, '&' multiple
  std::string present;      // prefix word (optional) or joiner (multiple)
  std::string absent;       // fallback word when the field is empty
  std::string word;         // literal when not a slot
};

Slot parse_pattern_token(const std::string& tok) {
  Slot s;
  if (tok.empty() || tok[0] != '$' || tok.size() < 2 || !std::isdigit((unsigned char)tok[1])) {
    s.word = tok;
    return s;
  }
  s.is_slot = true;
  size_t i = 1;
  while (i < tok.size() && std::isdigit((unsigned char)tok[i])) ++i;
  s.field = std::stoul(tok.substr(1, i - 1));
  if (i == tok.size()) return s;
  s.mode = tok[i++];
  std::string rest = tok.substr(i);
  auto slash = rest.find('/');
  s.present = rest.substr(0, slash);
  if (slash != std::string::npos) s.absent = rest.substr(slash + 1);
  return s;
}

}  // namespace

const Grammar& toy_grammar() {
  static const Grammar g = Grammar::parse(kToyGrammarText);
  return g;
}

const CodeSyntax& toy_syntax() {
  static const CodeSyntax syntax = [] {
    CodeSyntax s;
    s.add_head("Len", "len:i");
    s.add_head("Argmax", "argmax");
    s.add_head("And", "and");
    s.add_head("Loc", "loc:t");
    s.add_head("Place", "place:t");
    s.add_head("Elevation", "elevation:i");
    s.add_bare("Const", "expr");
    s.add_bare("Var", "var");
    return s;
  }();
  return syntax;
}

const std::vector<Template>& toy_templates() {
  static const std::vector<Template> templates = {
      {"Len", {"what", "length", "is", "the", "$0"}, "len:i"},
      {"Argmax", {"which", "$0", "among", "$1", "has", "the", "highest", "$2"}, "argmax"},
      {"And", {"$0&and/nothing"}, "and"},
      {"Loc", {"$0", "located", "$1?in/somewhere"}, "loc:t"},
      {"Place", {"place", "$0"}, "place:t"},
      {"Elevation", {"elevation", "of", "$0"}, "elevation:i"},
      {"Const", {"$0"}, ""},
      {"Var", {"$0"}, ""},
  };
  return templates;
}

std::vector<std::string> ast_to_nl(const Grammar& grammar, const std::vector<Template>& templates,
                                   const AstNode& node) {
  if (node.is_token()) return {node.token};
  const Template* tpl = nullptr;
  for (auto& t : templates)
    if (t.ctor == node.ctor) {
      tpl = &t;
      break;
    }
  if (!tpl) throw CorpusError("template coverage gap: no template for '" + node.ctor + "'");
  std::vector<std::string> out;
  for (auto& raw : tpl->nl_pattern) {
    Slot slot = parse_pattern_token(raw);
    if (!slot.is_slot) {
      out.push_back(slot.word);
      continue;
    }
    if (slot.field >= node.fields.size())
      throw CorpusError("template for '" + node.ctor + "' references missing field " +
                        std::to_string(slot.field));
    const auto& children = node.fields[slot.field];
    if (slot.mode == '&') {
      if (children.empty()) {
        out.push_back(slot.absent);
      } else {
        for (size_t i = 0; i < children.size(); ++i) {
          if (i) out.push_back(slot.present);
          auto child_nl = ast_to_nl(grammar, templates, children[i]);
          out.insert(out.end(), child_nl.begin(), child_nl.end());
        }
      }
    } else if (slot.mode == '?') {
      if (children.empty()) {
        out.push_back(slot.absent);
      } else {
        if (!slot.present.empty()) out.push_back(slot.present);
        auto child_nl = ast_to_nl(grammar, templates, children[0]);
        out.insert(out.end(), child_nl.begin(), child_nl.end());
      }
    } else {
      if (children.empty())
        throw CorpusError("template slot for single field " + std::to_string(slot.field) +
                          " of '" + node.ctor + "' has no child");
      auto child_nl = ast_to_nl(grammar, templates, children[0]);
      out.insert(out.end(), child_nl.begin(), child_nl.end());
    }
  }
  return out;
}

namespace {

// Minimum number of levels needed to finish a tree of the given type.
struct DepthTable {
  std::map<std::string, int> by_type;
  std::map<std::string, int> by_ctor;

  static DepthTable build(const Grammar& g) {
    DepthTable t;
    const int inf = 1 << 20;
    for (auto& p : g.primitive_types()) t.by_type[p] = 1;
    for (auto& c : g.composite_types()) t.by_type[c] = inf;
    for (auto& ctor : g.constructors()) t.by_ctor[ctor.name] = inf;
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& ctor : g.constructors()) {
        int need = 0;
        for (auto& f : ctor.fields)
          if (f.card == Cardinality::Single) need = std::max(need, t.by_type[f.type]);
        int depth = 1 + need;
        if (depth < t.by_ctor[ctor.name]) {
          t.by_ctor[ctor.name] = depth;
          changed = true;
        }
        if (depth < t.by_type[ctor.result_type]) {
          t.by_type[ctor.result_type] = depth;
          changed = true;
        }
      }
    }
    return t;
  }
};

struct Sampler {
  const Grammar& grammar;
  const std::vector<Template>& templates;
  const DepthTable& depths;
  std::mt19937_64& rng;

  std::string pick(const std::vector<std::string>& pool) {
    std::uniform_int_distribution<size_t> d(0, pool.size() - 1);
    return pool[d(rng)];
  }

  AstNode sample_type(const std::string& type, int budget, const std::string& owner_ctor) {
    if (grammar.is_primitive(type)) {
      const auto& pool = owner_ctor == "Var" ? kVarPool : kConstPool;
      return AstNode::make_token(pick(pool));
    }
    std::vector<std::string> allowed;
    for (auto& name : grammar.constructors_of(type))
      if (depths.by_ctor.at(name) <= budget) allowed.push_back(name);
    if (allowed.empty())
      throw CorpusError("depth limit unsatisfiable for type '" + type + "' with budget " +
                        std::to_string(budget));
    std::string name = pick(allowed);
    const Constructor& ctor = grammar.constructor(name);
    std::vector<std::vector<AstNode>> fields(ctor.fields.size());
    for (size_t i = 0; i < ctor.fields.size(); ++i) {
      const Field& f = ctor.fields[i];
      bool fits = depths.by_type.at(f.type) <= budget - 1;
      switch (f.card) {
        case Cardinality::Single:
          fields[i].push_back(sample_type(f.type, budget - 1, name));
          break;
        case Cardinality::Optional:
          if (fits && std::bernoulli_distribution(0.5)(rng))
            fields[i].push_back(sample_type(f.type, budget - 1, name));
          break;
        case Cardinality::Multiple: {
          int count = fits ? std::uniform_int_distribution<int>(0, 3)(rng) : 0;
          for (int k = 0; k < count; ++k)
            fields[i].push_back(sample_type(f.type, budget - 1, name));
          break;
        }
      }
    }
    return AstNode::make(name, std::move(fields));
  }
};

std::vector<std::string> apply_noise(const std::vector<std::string>& nl, std::mt19937_64& rng) {
  std::vector<std::string> out;
  out.reserve(nl.size());
  for (auto& w : nl) {
    auto it = kSynonyms.find(w);
    if (it == kSynonyms.end()) {
      out.push_back(w);
    } else {
      std::uniform_int_distribution<size_t> d(0, it->second.size() - 1);
      out.push_back(it->second[d(rng)]);
    }
  }
  return out;
}

}  // namespace

std::vector<const DatasetExample*> Dataset::all() const {
  std::vector<const DatasetExample*> out;
  for (auto* split : {&train, &dev, &test})
    for (auto& e : *split) out.push_back(&e);
  return out;
}

Dataset generate_corpus(const Grammar& grammar, const std::vector<Template>& templates, int n,
                        int max_depth, uint64_t seed, bool noise) {
  if (n < 1) throw CorpusError("n must be >= 1");
  if (max_depth < 1) throw CorpusError("max depth must be >= 1");
  for (auto& ctor : grammar.constructors()) {
    size_t hits = 0;
    for (auto& t : templates)
      if (t.ctor == ctor.name) ++hits;
    if (hits != 1)
      throw CorpusError("template coverage gap: constructor '" + ctor.name + "' has " +
                        std::to_string(hits) + " templates");
  }

  DepthTable depths = DepthTable::build(grammar);
  if (depths.by_type.at(grammar.root_type()) > max_depth)
    throw CorpusError("depth limit unsatisfiable: root type needs depth " +
                      std::to_string(depths.by_type.at(grammar.root_type())));

  std::mt19937_64 rng(seed);
  Sampler sampler{grammar, templates, depths, rng};
  std::set<std::string> seen;
  std::vector<DatasetExample> examples;
  long attempts = 0;
  const long max_attempts = 200L * n + 1000;
  while (static_cast<int>(examples.size()) < n) {
    if (++attempts > max_attempts)
      throw CorpusError("could not sample " + std::to_string(n) +
                        " distinct examples at depth " + std::to_string(max_depth));
    AstNode tree = sampler.sample_type(grammar.root_type(), max_depth, "");
    std::string code = ast_to_code(tree, toy_syntax());
    if (!seen.insert(code).second) continue;
    std::vector<std::string> nl = ast_to_nl(grammar, templates, tree);
    if (noise) nl = apply_noise(nl, rng);
    examples.push_back(DatasetExample{std::move(nl), std::move(code)});
  }

  Dataset out;
  size_t n_test = examples.size() / 10;
  size_t n_dev = examples.size() / 10;
  size_t n_train = examples.size() - n_dev - n_test;
  out.train.assign(examples.begin(), examples.begin() + n_train);
  out.dev.assign(examples.begin() + n_train, examples.begin() + n_train + n_dev);
  out.test.assign(examples.begin() + n_train + n_dev, examples.end());
  return out;
}

SplitStats dataset_stats(std::span<const DatasetExample> examples, const Grammar& grammar,
                         const CodeSyntax& syntax, Traversal traversal) {
  if (examples.empty()) throw CorpusError("empty dataset");
  SplitStats s;
  s.count = examples.size();
  double nl = 0, code = 0, actions = 0;
  for (auto& e : examples) {
    nl += static_cast<double>(e.nl.size());
    code += static_cast<double>(tokenize_code(e.code).size());
    AstNode tree = code_to_ast(grammar, syntax, e.code);
    actions += static_cast<double>(ast_to_actions(grammar, tree, traversal).size());
  }
  s.avg_nl_len = nl / s.count;
  s.avg_code_len = code / s.count;
  s.avg_action_len = actions / s.count;
  return s;
}

std::string dataset_to_jsonl(std::span<const DatasetExample> examples) {
  std::string out;
  for (auto& e : examples) {
    nlohmann::ordered_json j;
    j["nl"] = e.nl;
    j["code"] = e.code;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<DatasetExample> dataset_from_jsonl(const std::string& text) {
  std::vector<DatasetExample> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError("bad JSONL at line " + std::to_string(lineno) + ": " + e.what());
    }
    DatasetExample ex;
    ex.nl = j.at("nl").get<std::vector<std::string>>();
    ex.code = j.at("code").get<std::string>();
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace seqtree
