#include "metrics.hpp"

#include <cmath>
#include <sstream>

namespace seqtree {

int exact_match(const std::string& pred_code, const std::string& gold_code) {
  return tokenize_code(pred_code) == tokenize_code(gold_code) ? 1 : 0;
}

int prefix_match(std::span<const std::string> pred, std::span<const std::string> gold,
                 double percent) {
  if (gold.empty()) throw MetricsError("prefix_match: empty gold sequence");
  if (!(percent > 0.0) || percent > 100.0)
    throw MetricsError("prefix_match: percent must be in (0, 100]");
  size_t k = static_cast<size_t>(std::ceil(percent / 100.0 * static_cast<double>(gold.size())));
  if (pred.size() < k) return 0;
  for (size_t i = 0; i < k; ++i)
    if (pred[i] != gold[i]) return 0;
  return 1;
}

namespace {

// n-gram counts as a map from the joined n-gram to its count
std::map<std::string, long> ngram_counts(const std::vector<std::string>& tokens, size_t n) {
  std::map<std::string, long> counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (size_t j = 0; j < n; ++j) {
      if (j) key += '\x1f';
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double bleu4(const std::vector<std::vector<std::string>>& predictions,
             const std::vector<std::vector<std::string>>& references) {
  if (predictions.empty()) throw MetricsError("bleu4: empty corpus");
  if (predictions.size() != references.size())
    throw MetricsError("bleu4: prediction/reference count mismatch");
  constexpr size_t N = 4;
  long matched[N] = {0, 0, 0, 0};
  long total[N] = {0, 0, 0, 0};
  long pred_len = 0, ref_len = 0;
  for (size_t i = 0; i < predictions.size(); ++i) {
    pred_len += static_cast<long>(predictions[i].size());
    ref_len += static_cast<long>(references[i].size());
    for (size_t n = 1; n <= N; ++n) {
      auto pc = ngram_counts(predictions[i], n);
      auto rc = ngram_counts(references[i], n);
      for (auto& [gram, count] : pc) {
        total[n - 1] += count;
        auto it = rc.find(gram);
        if (it != rc.end()) matched[n - 1] += std::min(count, it->second);
      }
    }
  }
  double log_precision = 0.0;
  for (size_t n = 0; n < N; ++n) {
    if (total[n] == 0 || matched[n] == 0) return 0.0;
    log_precision += std::log(static_cast<double>(matched[n]) / static_cast<double>(total[n]));
  }
  double bp = 1.0;
  if (pred_len < ref_len && pred_len > 0)
    bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(pred_len));
  if (pred_len == 0) return 0.0;
  return bp * std::exp(log_precision / static_cast<double>(N));
}

EvalReport evaluate_corpus(std::span<const std::string> pred_codes,
                           std::span<const std::string> gold_codes, const Grammar& grammar,
                           const CodeSyntax& syntax, Traversal traversal) {
  if (pred_codes.size() != gold_codes.size())
    throw MetricsError("evaluate_corpus: prediction/gold count mismatch");
  if (gold_codes.empty()) throw MetricsError("evaluate_corpus: empty corpus");

  EvalReport report;
  report.count = gold_codes.size();
  std::vector<std::vector<std::string>> pred_tokens(pred_codes.size());
  std::vector<std::vector<std::string>> gold_tokens(gold_codes.size());
  double em_sum = 0.0;
  std::map<int, double> ast_sum, code_sum;
  for (int p : kPrefixPercents) ast_sum[p] = code_sum[p] = 0.0;

  auto action_texts = [&](const std::string& code) -> std::vector<std::string> {
    AstNode tree = code_to_ast(grammar, syntax, code);
    std::vector<std::string> out;
    for (auto& step : ast_to_actions(grammar, tree, traversal))
      out.push_back(step.action.to_text());
    return out;
  };

  for (size_t i = 0; i < gold_codes.size(); ++i) {
    pred_tokens[i] = tokenize_code(pred_codes[i]);
    gold_tokens[i] = tokenize_code(gold_codes[i]);
    em_sum += exact_match(pred_codes[i], gold_codes[i]);

    std::vector<std::string> gold_actions = action_texts(gold_codes[i]);
    std::vector<std::string> pred_actions;
    try {
      pred_actions = action_texts(pred_codes[i]);
    } catch (const std::exception&) {
      ++report.unparseable_predictions;  // pred_actions stays empty => mismatch
    }
    for (int p : kPrefixPercents) {
      ast_sum[p] += prefix_match(pred_actions, gold_actions, p);
      code_sum[p] += prefix_match(pred_tokens[i], gold_tokens[i], p);
    }
  }

  report.em = em_sum / static_cast<double>(report.count);
  for (int p : kPrefixPercents) {
    report.prefix_ast[p] = ast_sum[p] / static_cast<double>(report.count);
    report.prefix_code[p] = code_sum[p] / static_cast<double>(report.count);
  }
  report.bleu = bleu4(pred_tokens, gold_tokens);
  return report;
}

nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["count"] = count;
  j["em"] = em;
  j["bleu4"] = bleu;
  nlohmann::ordered_json pa = nlohmann::ordered_json::object();
  nlohmann::ordered_json pc = nlohmann::ordered_json::object();
  for (auto& [p, v] : prefix_ast) pa[std::to_string(p)] = v;
  for (auto& [p, v] : prefix_code) pc[std::to_string(p)] = v;
  j["prefix_em_ast"] = pa;
  j["prefix_em_code"] = pc;
  j["unparseable_predictions"] = unparseable_predictions;
  return j;
}

std::string EvalReport::to_table() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "examples: %zu  EM: %.4f  BLEU-4: %.4f\n", count, em, bleu);
  out << line;
  out << "prefix-EM     5%      10%     20%     50%\n";
  out << "  actions  ";
  for (int p : kPrefixPercents) {
    std::snprintf(line, sizeof(line), "%.4f  ", prefix_ast.at(p));
    out << line;
  }
  out << "\n  code     ";
  for (int p : kPrefixPercents) {
    std::snprintf(line, sizeof(line), "%.4f  ", prefix_code.at(p));
    out << line;
  }
  out << "\n";
  return out.str();
}

}  // namespace seqtree
