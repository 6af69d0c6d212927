#include "mcda/train.h"

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

#include "mcda/errors.h"

namespace mcda {

TrainingSet TrainingSet::Pointwise(Matrix items, std::span<const double> labels) {
  if (labels.size() != items.rows()) {
    throw SchemaError("have " + std::to_string(labels.size()) + " labels for " +
                      std::to_string(items.rows()) + " rows");
  }
  TrainingSet set;
  set.items = std::move(items);
  set.examples.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    set.examples.push_back({i, Example::kNone, labels[i]});
  }
  return set;
}

TrainingSet TrainingSet::Subset(std::span<const std::size_t> example_indices) const {
  TrainingSet out;
  out.items = items;
  out.examples.reserve(example_indices.size());
  for (std::size_t idx : example_indices) out.examples.push_back(examples.at(idx));
  return out;
}

void TrainingSet::Validate() const {
  for (std::size_t e = 0; e < examples.size(); ++e) {
    const Example& ex = examples[e];
    if (ex.first >= items.rows() || (ex.is_pair() && ex.second >= items.rows())) {
      throw SchemaError("example " + std::to_string(e) + " refers to a missing item");
    }
    if (ex.label != 0.0 && ex.label != 1.0) {
      throw SchemaError("example " + std::to_string(e) + " has non-binary label " +
                        std::to_string(ex.label));
    }
  }
}

std::string_view LossVariantName(LossVariant variant) {
  switch (variant) {
    case LossVariant::kMse:
      return "mse";
    case LossVariant::kMseLinearReg:
      return "mse_plus_linear_reg";
    case LossVariant::kMseBalancedReg:
      return "mse_balanced_reg";
  }
  return "unknown";
}

LossVariant ParseLossVariant(std::string_view name) {
  if (name == "mse") return LossVariant::kMse;
  if (name == "mse_plus_linear_reg" || name == "reg-linear") return LossVariant::kMseLinearReg;
  if (name == "mse_balanced_reg" || name == "reg-balanced") return LossVariant::kMseBalancedReg;
  throw ConfigError("unknown loss variant '" + std::string(name) +
                    "' (expected mse, reg-linear or reg-balanced)");
}

double ExampleLogit(const Example& example, std::span<const double> item_scores) {
  const double first = item_scores[example.first];
  return example.is_pair() ? first - item_scores[example.second] : first;
}

std::vector<double> ScoreItems(const HybridModel& model, const Matrix& items) {
  return ScoreItems(model, model.ExpandAll(items));
}

std::vector<double> ScoreItems(const HybridModel& model, const ExpandedItems& expanded) {
  const double a = model.alpha();
  std::vector<double> scores(expanded.network.rows());
  for (std::size_t r = 0; r < scores.size(); ++r) {
    double score = 0.0;
    if (a != 0.0) score += a * model.additive().LinearScoreExpanded(expanded.linear.row(r));
    if (a != 1.0) score += (1.0 - a) * model.mlp().Forward(expanded.network.row(r));
    scores[r] = score;
  }
  return scores;
}

namespace {

double Regularizer(LossVariant variant, double alpha) {
  switch (variant) {
    case LossVariant::kMse:
      return 0.0;
    case LossVariant::kMseLinearReg:
      return (1.0 - alpha) * (1.0 - alpha);
    case LossVariant::kMseBalancedReg:
      return (2.0 * alpha - 1.0) * (2.0 * alpha - 1.0);
  }
  return 0.0;
}

double RegularizerDerivative(LossVariant variant, double alpha) {
  switch (variant) {
    case LossVariant::kMse:
      return 0.0;
    case LossVariant::kMseLinearReg:
      return -2.0 * (1.0 - alpha);
    case LossVariant::kMseBalancedReg:
      return 4.0 * (2.0 * alpha - 1.0);
  }
  return 0.0;
}

}  // namespace

double Loss(const HybridModel& model, const TrainingSet& batch) {
  if (batch.examples.empty()) throw UsageError("loss of an empty batch");
  double sum = 0.0;
  for (const Example& ex : batch.examples) {
    double logit = model.GlobalScore(batch.items.row(ex.first));
    if (ex.is_pair()) logit -= model.GlobalScore(batch.items.row(ex.second));
    const double residual = Sigmoid(logit) - ex.label;
    sum += residual * residual;
  }
  return sum / static_cast<double>(batch.examples.size());
}

double LossRegularized(const HybridModel& model, const TrainingSet& batch,
                       LossVariant variant) {
  return Loss(model, batch) + Regularizer(variant, model.alpha());
}

GradientEvaluator::GradientEvaluator(const Matrix& items, const ExpandedItems& expanded)
    : expanded_(expanded), slot_of_item_(items.rows(), -1) {}

double GradientEvaluator::Evaluate(const HybridModel& model,
                                   std::span<const Example> examples,
                                   std::span<const std::size_t> indices,
                                   LossVariant variant, std::vector<double>& gradient) {
  if (indices.empty()) throw UsageError("loss of an empty batch");
  const double a = model.alpha();
  const bool trainable = model.alpha_parameter().mode == AlphaMode::kTrainable;
  const bool use_linear = trainable || a != 0.0;
  const bool use_network = trainable || a != 1.0;
  const AdditiveComponent& additive = model.additive();
  const MlpComponent& mlp = model.mlp();

  auto touch = [this](std::size_t item) {
    if (slot_of_item_[item] < 0) {
      slot_of_item_[item] = static_cast<std::ptrdiff_t>(touched_.size());
      touched_.push_back(item);
    }
  };
  touched_.clear();
  for (std::size_t idx : indices) {
    const Example& ex = examples[idx];
    touch(ex.first);
    if (ex.is_pair()) touch(ex.second);
  }
  const std::size_t slots = touched_.size();
  if (caches_.size() < slots) caches_.resize(slots);
  linear_scores_.assign(slots, 0.0);
  network_scores_.assign(slots, 0.0);
  upstream_.assign(slots, 0.0);
  for (std::size_t s = 0; s < slots; ++s) {
    const std::size_t item = touched_[s];
    if (use_linear) linear_scores_[s] = additive.LinearScoreExpanded(expanded_.linear.row(item));
    if (use_network) network_scores_[s] = mlp.Forward(expanded_.network.row(item), &caches_[s]);
  }

  const double inv_batch = 1.0 / static_cast<double>(indices.size());
  double loss = 0.0;
  double alpha_grad = 0.0;
  for (std::size_t idx : indices) {
    const Example& ex = examples[idx];
    const std::size_t s1 = static_cast<std::size_t>(slot_of_item_[ex.first]);
    double linear = linear_scores_[s1];
    double network = network_scores_[s1];
    if (ex.is_pair()) {
      const std::size_t s2 = static_cast<std::size_t>(slot_of_item_[ex.second]);
      linear -= linear_scores_[s2];
      network -= network_scores_[s2];
    }
    const double logit = a * linear + (1.0 - a) * network;
    const double p = Sigmoid(logit);
    const double residual = p - ex.label;
    loss += residual * residual * inv_batch;
    const double dlogit = 2.0 * residual * p * (1.0 - p) * inv_batch;
    upstream_[s1] += dlogit;
    if (ex.is_pair()) upstream_[static_cast<std::size_t>(slot_of_item_[ex.second])] -= dlogit;
    alpha_grad += dlogit * (linear - network);
  }
  loss += Regularizer(variant, a);
  alpha_grad += RegularizerDerivative(variant, a);

  weight_grad_.assign(additive.weights().size(), 0.0);
  coeff_grad_.assign(additive.coeffs().size(), 0.0);
  if (mlp_grad_.head.size() != mlp.head().size() ||
      mlp_grad_.weights.size() != mlp.layers().size()) {
    mlp_grad_ = MlpGradient::ZerosLike(mlp);
  } else {
    mlp_grad_.SetZero();
  }
  for (std::size_t s = 0; s < slots; ++s) {
    const double g = upstream_[s];
    const std::size_t item = touched_[s];
    if (use_linear) {
      additive.AccumulateGradient(expanded_.linear.row(item), a * g, weight_grad_,
                                  coeff_grad_);
    }
    if (use_network) mlp.AccumulateBackward(caches_[s], (1.0 - a) * g, mlp_grad_);
    slot_of_item_[item] = -1;
  }

  gradient.clear();
  gradient.reserve(model.num_parameters());
  if (trainable) gradient.push_back(alpha_grad * model.alpha_parameter().derivative());
  gradient.insert(gradient.end(), weight_grad_.begin(), weight_grad_.end());
  gradient.insert(gradient.end(), coeff_grad_.begin(), coeff_grad_.end());
  MlpComponent::AppendGradient(mlp_grad_, gradient);
  return loss;
}

double LossGradient(const HybridModel& model, const TrainingSet& batch,
                    LossVariant variant, std::vector<double>& gradient) {
  const ExpandedItems expanded = model.ExpandAll(batch.items);
  GradientEvaluator evaluator(batch.items, expanded);
  std::vector<std::size_t> all(batch.examples.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return evaluator.Evaluate(model, batch.examples, all, variant, gradient);
}

std::string_view OptimizerName(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kSgd:
      return "sgd";
    case OptimizerKind::kAdagrad:
      return "adagrad";
    case OptimizerKind::kAdam:
      return "adam";
  }
  return "unknown";
}

OptimizerKind ParseOptimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adagrad") return OptimizerKind::kAdagrad;
  if (name == "adam") return OptimizerKind::kAdam;
  throw ConfigError("unknown optimizer '" + std::string(name) +
                    "' (expected sgd, adagrad or adam)");
}

namespace {

class Sgd : public Optimizer {
 public:
  explicit Sgd(double lr) : lr_(lr) {}
  void Step(std::span<double> params, std::span<const double> grad) override {
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr_ * grad[i];
  }

 private:
  double lr_;
};

class Adagrad : public Optimizer {
 public:
  Adagrad(double lr, std::size_t n) : lr_(lr), sum_sq_(n, 0.0) {}
  void Step(std::span<double> params, std::span<const double> grad) override {
    for (std::size_t i = 0; i < params.size(); ++i) {
      sum_sq_[i] += grad[i] * grad[i];
      params[i] -= lr_ * grad[i] / (std::sqrt(sum_sq_[i]) + kEps);
    }
  }

 private:
  static constexpr double kEps = 1e-8;
  double lr_;
  std::vector<double> sum_sq_;
};

class Adam : public Optimizer {
 public:
  Adam(double lr, std::size_t n) : lr_(lr), m_(n, 0.0), v_(n, 0.0) {}
  void Step(std::span<double> params, std::span<const double> grad) override {
    ++t_;
    beta1_power_ *= kBeta1;
    beta2_power_ *= kBeta2;
    const double m_correction = 1.0 / (1.0 - beta1_power_);
    const double v_correction = 1.0 / (1.0 - beta2_power_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      const double m_hat = m_[i] * m_correction;
      const double v_hat = v_[i] * v_correction;
      params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + kEps);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  double lr_;
  long t_ = 0;
  double beta1_power_ = 1.0;
  double beta2_power_ = 1.0;
  std::vector<double> m_;
  std::vector<double> v_;
};

}  // namespace

std::unique_ptr<Optimizer> MakeOptimizer(OptimizerKind kind, double learning_rate,
                                         std::size_t num_parameters) {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be positive, got " + std::to_string(learning_rate));
  }
  switch (kind) {
    case OptimizerKind::kSgd:
      return std::make_unique<Sgd>(learning_rate);
    case OptimizerKind::kAdagrad:
      return std::make_unique<Adagrad>(learning_rate, num_parameters);
    case OptimizerKind::kAdam:
      return std::make_unique<Adam>(learning_rate, num_parameters);
  }
  throw ConfigError("unknown optimizer");
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be positive, got " + std::to_string(learning_rate));
  }
  if (iterations < 0) throw ConfigError("iteration count must be non-negative");
  if (alpha_mode == AlphaMode::kFixed && !(fixed_alpha >= 0.0 && fixed_alpha <= 1.0)) {
    throw ConfigError("fixed alpha must lie in [0, 1], got " + std::to_string(fixed_alpha));
  }
}

AlphaParameter TrainConfig::InitialAlpha() const {
  return alpha_mode == AlphaMode::kTrainable ? AlphaParameter::Trainable(0.0)
                                             : AlphaParameter::Fixed(fixed_alpha);
}

TrainReport TrainModel(HybridModel& model, const TrainingSet& data,
                       const TrainConfig& config, const EpochCallback& on_epoch) {
  config.Validate();
  data.Validate();
  if (data.examples.empty()) throw UsageError("training set has no examples");
  const auto start = std::chrono::steady_clock::now();

  const ExpandedItems expanded = model.ExpandAll(data.items);
  GradientEvaluator evaluator(data.items, expanded);
  std::vector<double> params = model.Parameters();
  std::vector<double> gradient;
  auto optimizer = MakeOptimizer(config.optimizer, config.learning_rate, params.size());

  const std::size_t weight_begin =
      model.alpha_parameter().mode == AlphaMode::kTrainable ? 1 : 0;
  const std::size_t weight_end = weight_begin + model.additive().weights().size();

  Rng shuffle_rng(DeriveSeed(config.seed, {2}));
  std::vector<std::size_t> order(data.examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t batch =
      config.batch_size == 0 ? order.size() : std::min(config.batch_size, order.size());

  TrainReport report;
  report.seed = config.seed;
  for (int epoch = 1; epoch <= config.iterations; ++epoch) {
    Shuffle(order, shuffle_rng);
    double weighted_loss = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += batch) {
      const std::size_t size = std::min(batch, order.size() - begin);
      const double loss = evaluator.Evaluate(
          model, data.examples, std::span<const std::size_t>(order).subspan(begin, size),
          config.loss, gradient);
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "non-finite loss in pass " << epoch << " (step starting at example "
            << begin << "); the learning rate " << config.learning_rate
            << " is likely too large for optimizer " << OptimizerName(config.optimizer);
        throw TrainingDiverged(msg.str());
      }
      weighted_loss += loss * static_cast<double>(size);
      optimizer->Step(params, gradient);
      for (std::size_t i = weight_begin; i < weight_end; ++i) {
        if (params[i] < 0.0) params[i] = 0.0;
      }
      model.SetParameters(params);
    }
    report.loss_trace.push_back(weighted_loss / static_cast<double>(order.size()));
    if (on_epoch) on_epoch(epoch, model);
  }
  report.iterations = config.iterations;
  report.final_alpha = model.alpha();
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

TrainResult Train(const TrainingSet& data, const ModelSpec& spec,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  config.Validate();
  Rng init_rng(DeriveSeed(config.seed, {1}));
  HybridModel model = HybridModel::Create(spec, config.InitialAlpha(), init_rng);
  TrainReport report = TrainModel(model, data, config, on_epoch);
  return {std::move(model), std::move(report)};
}

namespace {

// Validation MSE computed from the scores of the items the examples touch.
class ValidationLoss {
 public:
  ValidationLoss(const TrainingSet& data, std::vector<std::size_t> examples)
      : data_(data), examples_(std::move(examples)) {
    std::vector<bool> used(data.items.rows(), false);
    for (std::size_t e : examples_) {
      used[data.examples[e].first] = true;
      if (data.examples[e].is_pair()) used[data.examples[e].second] = true;
    }
    for (std::size_t i = 0; i < used.size(); ++i) {
      if (used[i]) items_.push_back(i);
    }
    scores_.assign(data.items.rows(), 0.0);
  }

  double operator()(const HybridModel& model) {
    for (std::size_t i : items_) scores_[i] = model.GlobalScore(data_.items.row(i));
    double sum = 0.0;
    for (std::size_t e : examples_) {
      const Example& ex = data_.examples[e];
      const double residual = Sigmoid(ExampleLogit(ex, scores_)) - ex.label;
      sum += residual * residual;
    }
    return sum / static_cast<double>(examples_.size());
  }

 private:
  const TrainingSet& data_;
  std::vector<std::size_t> examples_;
  std::vector<std::size_t> items_;
  std::vector<double> scores_;
};

}  // namespace

CvSelection SelectIterationsCv(const TrainingSet& data, const ModelSpec& spec,
                               const TrainConfig& config, int folds) {
  config.Validate();
  if (folds < 2) throw ConfigError("cross-validation needs at least two folds");
  if (data.examples.size() < static_cast<std::size_t>(folds)) {
    throw ConfigError("cross-validation needs at least " + std::to_string(folds) +
                      " examples, got " + std::to_string(data.examples.size()));
  }
  if (config.iterations < 1) throw ConfigError("maximum iteration count must be >= 1");

  Rng fold_rng(DeriveSeed(config.seed, {3}));
  const std::vector<std::size_t> order = Permutation(data.examples.size(), fold_rng);

  CvSelection selection;
  double best_sum = 0.0;
  for (int f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> valid_idx;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const bool in_fold = pos * static_cast<std::size_t>(folds) / order.size() ==
                           static_cast<std::size_t>(f);
      (in_fold ? valid_idx : train_idx).push_back(order[pos]);
    }
    double positives = 0.0;
    for (std::size_t e : valid_idx) positives += data.examples[e].label;
    if (positives == 0.0 || positives == static_cast<double>(valid_idx.size())) {
      selection.warnings.push_back("fold " + std::to_string(f + 1) +
                                   " validation set contains a single class");
    }

    TrainConfig fold_config = config;
    fold_config.seed = DeriveSeed(config.seed, {4, static_cast<std::uint64_t>(f)});
    ValidationLoss validation(data, valid_idx);
    int best_epoch = 1;
    double best_loss = std::numeric_limits<double>::infinity();
    Train(data.Subset(train_idx), spec, fold_config,
          [&](int epoch, const HybridModel& model) {
            const double loss = validation(model);
            if (loss < best_loss) {
              best_loss = loss;
              best_epoch = epoch;
            }
          });
    selection.fold_best.push_back(best_epoch);
    best_sum += best_epoch;
  }
  selection.iterations =
      std::max(1, static_cast<int>(std::lround(best_sum / static_cast<double>(folds))));
  selection.iterations = std::min(selection.iterations, config.iterations);
  return selection;
}

}  // namespace mcda
