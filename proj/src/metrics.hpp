#ifndef SEQTREE_METRICS_HPP
#define SEQTREE_METRICS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ast.hpp"
#include "grammar.hpp"
#include "json.hpp"
#include "transition.hpp"

namespace seqtree {

struct MetricsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 1 iff the normalized token sequences of both code strings are identical.
int exact_match(const std::string& pred_code, const std::string& gold_code);

// 1 iff the first ceil(percent/100 * |gold|) elements match; a prediction
// shorter than the compared prefix counts as a mismatch. percent must lie in
// (0, 100], gold must be non-empty.
int prefix_match(std::span<const std::string> pred, std::span<const std::string> gold,
                 double percent);

// Corpus-level BLEU with n-grams 1..4: clipped modified precision, geometric
// mean, brevity penalty, no smoothing (any zero n-gram total gives 0).
double bleu4(const std::vector<std::vector<std::string>>& predictions,
             const std::vector<std::vector<std::string>>& references);

struct EvalReport {
  double em = 0.0;
  std::map<int, double> prefix_ast;   // percent -> mean prefix EM on action sequences
  std::map<int, double> prefix_code;  // percent -> mean prefix EM on code tokens
  double bleu = 0.0;
  size_t count = 0;
  size_t unparseable_predictions = 0;

  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

inline const std::vector<int> kPrefixPercents = {5, 10, 20, 50};

// Corpus evaluation: EM and BLEU-4 on normalized code tokens, prefix EM on
// both action sequences (derived by parsing each side back into the
// transition system) and code tokens. Predictions that fail to parse count
// as mismatches for the action prefixes.
EvalReport evaluate_corpus(std::span<const std::string> pred_codes,
                           std::span<const std::string> gold_codes, const Grammar& grammar,
                           const CodeSyntax& syntax, Traversal traversal);

}  // namespace seqtree

#endif
