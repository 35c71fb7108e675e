#ifndef SEQTREE_APLOSS_HPP
#define SEQTREE_APLOSS_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "astvec.hpp"
#include "transition.hpp"

namespace seqtree {

enum class FactorMode { AstvecNorm, SimpleIndex };

// Hyperparameters of the antecedent-prioritized loss. Empirically gamma is
// best picked from [0.1, 0.5]; gamma = 0 recovers plain cross entropy.
struct LossConfig {
  double gamma = 0.0;
  std::optional<double> alpha = 2.0;  // nullopt => derive alpha from gamma and T
  FactorMode factor = FactorMode::AstvecNorm;
  double root_clamp = 1.0;  // floor for position-vector norms (root norm is 0)
};

constexpr double kGammaRecommendedMin = 0.1;
constexpr double kGammaRecommendedMax = 0.5;

struct LossError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-step position factor f(t): the clamped norm of the step's position
// vector, or simply the 1-based step index in SimpleIndex mode.
std::vector<double> position_factor(const std::vector<ActionStep>& steps, const LossConfig& cfg);

// f^(-gamma). Throws LossError for f <= 0 or gamma < 0.
double scaling_factor(double f, double gamma);

// Magnitude factor that keeps the weighted loss at the scale of the plain
// cross entropy over T steps: T/ln(T+1) at gamma = 1, (1-gamma)*T^gamma
// otherwise.
double alpha_auto(double gamma, double T);

// Constant alpha or the auto formula evaluated at this sequence's length.
double resolve_alpha(const LossConfig& cfg, double T);

struct ApLossResult {
  double total = 0.0;
  std::vector<double> contributions;  // per-step -alpha * f^(-gamma) * log p
  std::vector<double> weights;        // alpha * f^(-gamma)
  std::vector<double> factors;        // f values
  double alpha = 0.0;
};

// total = -alpha * sum_t f(t)^(-gamma) * log p_t. With gamma = 0 and
// alpha = 1 this equals the plain cross entropy exactly. Throws LossError on
// length mismatch, non-finite log-probabilities, or a non-positive resolved
// alpha.
ApLossResult ap_loss(std::span<const double> log_probs, const std::vector<ActionStep>& steps,
                     const LossConfig& cfg);

// Weights only (alpha * f^(-gamma) per step), for precomputing before
// training.
std::vector<double> ap_weights(const std::vector<ActionStep>& steps, const LossConfig& cfg);

}  // namespace seqtree

#endif
