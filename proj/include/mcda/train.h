#ifndef MCDA_TRAIN_H_
#define MCDA_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcda/hybrid.h"
#include "mcda/numeric.h"

namespace mcda {

// One supervised example. Pointwise examples score a single item
// (logit = U(first)); pairwise examples score a comparison
// (logit = U(first) - U(second)).
struct Example {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t first = 0;
  std::size_t second = kNone;
  double label = 0.0;

  bool is_pair() const { return second != kNone; }
};

// Items (rows of attribute values in [0, 1]) and the examples defined on them.
struct TrainingSet {
  Matrix items;
  std::vector<Example> examples;

  // Pointwise set: one example per row.
  static TrainingSet Pointwise(Matrix items, std::span<const double> labels);
  // Same items, a subset of the examples.
  TrainingSet Subset(std::span<const std::size_t> example_indices) const;
  // Throws SchemaError on out-of-range item indices or non-binary labels.
  void Validate() const;
};

enum class LossVariant { kMse, kMseLinearReg, kMseBalancedReg };

std::string_view LossVariantName(LossVariant variant);
// Accepts mse, mse_plus_linear_reg / reg-linear, mse_balanced_reg / reg-balanced.
LossVariant ParseLossVariant(std::string_view name);

// Logit of every example from per-item global scores.
double ExampleLogit(const Example& example, std::span<const double> item_scores);

// Global score of every item.
std::vector<double> ScoreItems(const HybridModel& model, const Matrix& items);
std::vector<double> ScoreItems(const HybridModel& model, const ExpandedItems& expanded);

// Mean of (sigmoid(logit) - y)^2. Throws UsageError on an empty batch.
double Loss(const HybridModel& model, const TrainingSet& batch);
// Loss plus (1 - alpha)^2 or (2 alpha - 1)^2 according to `variant`.
double LossRegularized(const HybridModel& model, const TrainingSet& batch,
                       LossVariant variant);

// Evaluates the (regularized) loss of examples[indices] and its gradient with
// respect to HybridModel::Parameters(). Reuses caches between calls.
class GradientEvaluator {
 public:
  GradientEvaluator(const Matrix& items, const ExpandedItems& expanded);

  // Returns the loss; overwrites `gradient` (resized to num_parameters()).
  double Evaluate(const HybridModel& model, std::span<const Example> examples,
                  std::span<const std::size_t> indices, LossVariant variant,
                  std::vector<double>& gradient);

 private:
  const ExpandedItems& expanded_;
  std::vector<std::ptrdiff_t> slot_of_item_;
  std::vector<std::size_t> touched_;
  std::vector<MlpCache> caches_;
  std::vector<double> linear_scores_;
  std::vector<double> network_scores_;
  std::vector<double> upstream_;
  std::vector<double> weight_grad_;
  std::vector<double> coeff_grad_;
  MlpGradient mlp_grad_;
};

// Loss and gradient on a whole batch (convenience wrapper).
double LossGradient(const HybridModel& model, const TrainingSet& batch,
                    LossVariant variant, std::vector<double>& gradient);

enum class OptimizerKind { kSgd, kAdagrad, kAdam };

std::string_view OptimizerName(OptimizerKind kind);
OptimizerKind ParseOptimizer(std::string_view name);

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual void Step(std::span<double> params, std::span<const double> grad) = 0;
};

// Plain SGD; Adagrad (accumulated squares, eps 1e-8); Adam (beta1 0.9,
// beta2 0.999, eps 1e-8, bias-corrected).
std::unique_ptr<Optimizer> MakeOptimizer(OptimizerKind kind, double learning_rate,
                                         std::size_t num_parameters);

struct TrainConfig {
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double learning_rate = 1e-3;
  // Passes over the training examples.
  int iterations = 100;
  // Examples per optimizer step; 0 means the whole training set.
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  AlphaMode alpha_mode = AlphaMode::kTrainable;
  double fixed_alpha = 0.5;
  LossVariant loss = LossVariant::kMse;

  // Throws ConfigError on invalid values.
  void Validate() const;
  AlphaParameter InitialAlpha() const;
};

struct TrainReport {
  // Per pass: mean minibatch loss, each minibatch measured before its step.
  std::vector<double> loss_trace;
  double final_alpha = 0.0;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;
};

struct TrainResult {
  HybridModel model;
  TrainReport report;
};

// Called after every pass with the 1-based pass index.
using EpochCallback = std::function<void(int, const HybridModel&)>;

// Joint training of all parameters (alpha included in trainable mode) from
// one shared loss. Deterministic for a fixed (seed, config, data). Throws
// TrainingDiverged on a non-finite loss.
TrainResult Train(const TrainingSet& data, const ModelSpec& spec,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});

// Continues training an existing model.
TrainReport TrainModel(HybridModel& model, const TrainingSet& data,
                       const TrainConfig& config, const EpochCallback& on_epoch = {});

struct CvSelection {
  int iterations = 0;
  std::vector<int> fold_best;
  std::vector<std::string> warnings;
};

// Five-fold selection of the pass count: each fold trains on the other four
// for config.iterations passes and records the pass with the lowest
// validation MSE; the rounded mean of those passes is returned.
CvSelection SelectIterationsCv(const TrainingSet& data, const ModelSpec& spec,
                               const TrainConfig& config, int folds = 5);

}  // namespace mcda

#endif  // MCDA_TRAIN_H_
