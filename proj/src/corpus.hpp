#ifndef SEQTREE_CORPUS_HPP
#define SEQTREE_CORPUS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ast.hpp"
#include "grammar.hpp"
#include "transition.hpp"

namespace seqtree {

// Surface forms for one constructor: an NL pattern whose slots expand to
// child renderings, plus the code head symbol (empty for bare constructors).
// A slot is written "$<field-index>"; a multiple-cardinality slot joins its
// children with "and", and "$opt:<i>:<word...>" renders alternative words
// when an optional field is empty.
struct Template {
  std::string ctor;
  std::vector<std::string> nl_pattern;
  std::string head;
};

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The lambda-form toy grammar (GEO-flavored): single, optional and multiple
// cardinalities across composite and primitive fields.
const Grammar& toy_grammar();
const CodeSyntax& toy_syntax();
const std::vector<Template>& toy_templates();

struct DatasetExample {
  std::vector<std::string> nl;
  std::string code;
};

struct Dataset {
  std::vector<DatasetExample> train, dev, test;
  std::vector<const DatasetExample*> all() const;
};

// Samples n distinct NL/code pairs top-down from the grammar (depth-limited),
// deterministically for a seed, split 80/10/10. With noise enabled, template
// words are randomly swapped with synonyms. Throws CorpusError when templates
// do not cover the grammar or the space of distinct programs is exhausted.
Dataset generate_corpus(const Grammar& grammar, const std::vector<Template>& templates, int n,
                        int max_depth, uint64_t seed, bool noise = false);

// Renders one AST into NL tokens using the template table.
std::vector<std::string> ast_to_nl(const Grammar& grammar, const std::vector<Template>& templates,
                                   const AstNode& node);

struct SplitStats {
  size_t count = 0;
  double avg_nl_len = 0.0;
  double avg_code_len = 0.0;    // code tokens
  double avg_action_len = 0.0;  // actions under the given traversal
};

SplitStats dataset_stats(std::span<const DatasetExample> examples, const Grammar& grammar,
                         const CodeSyntax& syntax, Traversal traversal);

// JSON-lines {"nl": [...], "code": "..."} persistence.
std::string dataset_to_jsonl(std::span<const DatasetExample> examples);
std::vector<DatasetExample> dataset_from_jsonl(const std::string& text);

}  // namespace seqtree

#endif
