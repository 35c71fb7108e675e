#include "aploss.hpp"

#include <algorithm>
#include <cmath>

namespace seqtree {

std::vector<double> position_factor(const std::vector<ActionStep>& steps, const LossConfig& cfg) {
  std::vector<double> factors(steps.size());
  if (cfg.factor == FactorMode::SimpleIndex) {
    for (size_t i = 0; i < steps.size(); ++i) factors[i] = static_cast<double>(i + 1);
    return factors;
  }
  std::vector<NodeVector> vectors = ast2vec(steps);
  for (size_t i = 0; i < steps.size(); ++i)
    factors[i] = std::max(vec_norm(vectors[i]), cfg.root_clamp);
  return factors;
}

double scaling_factor(double f, double gamma) {
  if (!(f > 0)) throw LossError("position factor must be positive, got " + std::to_string(f));
  if (gamma < 0) throw LossError("gamma must be >= 0, got " + std::to_string(gamma));
  return std::pow(f, -gamma);
}

double alpha_auto(double gamma, double T) {
  if (!(T > 0)) throw LossError("sequence length must be positive");
  if (gamma == 1.0) return T / std::log(T + 1.0);
  return (1.0 - gamma) * std::pow(T, gamma);
}

double resolve_alpha(const LossConfig& cfg, double T) {
  double alpha = cfg.alpha ? *cfg.alpha : alpha_auto(cfg.gamma, T);
  if (!std::isfinite(alpha) || alpha <= 0)
    throw LossError("resolved alpha must be positive and finite, got " + std::to_string(alpha));
  return alpha;
}

ApLossResult ap_loss(std::span<const double> log_probs, const std::vector<ActionStep>& steps,
                     const LossConfig& cfg) {
  if (log_probs.size() != steps.size())
    throw LossError("length mismatch: " + std::to_string(log_probs.size()) + " log-probs vs " +
                    std::to_string(steps.size()) + " steps");
  if (steps.empty()) throw LossError("empty action sequence");
  ApLossResult r;
  r.factors = position_factor(steps, cfg);
  r.alpha = resolve_alpha(cfg, static_cast<double>(steps.size()));
  r.weights.resize(steps.size());
  r.contributions.resize(steps.size());
  double weighted_sum = 0.0;
  for (size_t i = 0; i < steps.size(); ++i) {
    if (!std::isfinite(log_probs[i]))
      throw LossError("non-finite log-probability at step " + std::to_string(i + 1));
    double scale = scaling_factor(r.factors[i], cfg.gamma);
    r.weights[i] = r.alpha * scale;
    r.contributions[i] = -r.alpha * scale * log_probs[i];
    weighted_sum += scale * log_probs[i];
  }
  r.total = -r.alpha * weighted_sum;
  return r;
}

std::vector<double> ap_weights(const std::vector<ActionStep>& steps, const LossConfig& cfg) {
  std::vector<double> factors = position_factor(steps, cfg);
  double alpha = resolve_alpha(cfg, static_cast<double>(steps.size()));
  std::vector<double> weights(factors.size());
  for (size_t i = 0; i < factors.size(); ++i)
    weights[i] = alpha * scaling_factor(factors[i], cfg.gamma);
  return weights;
}

}  // namespace seqtree
