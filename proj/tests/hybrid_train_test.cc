#include <gtest/gtest.h>

#include <cmath>

#include "mcda/errors.h"
#include "mcda/hybrid.h"
#include "mcda/ranking.h"
#include "mcda/train.h"
#include "oracles.h"

namespace mcda {
namespace {

ModelSpec SmallSpec(std::size_t n, int degree, std::vector<std::size_t> hidden, Activation act) {
  ModelSpec spec = ModelSpec::Uniform(n, degree);
  spec.hidden_widths = std::move(hidden);
  spec.activation = act;
  return spec;
}

TrainingSet RandomPairs(Rng& rng, std::size_t items, std::size_t n, std::size_t pairs) {
  TrainingSet set;
  set.items = oracle::RandomItems(rng, items, n);
  for (std::size_t p = 0; p < pairs; ++p) {
    Example e;
    e.first = rng.UniformIndex(items);
    e.second = rng.UniformIndex(items);
    e.label = rng.Uniform01() < 0.5 ? 0.0 : 1.0;
    set.examples.push_back(e);
  }
  return set;
}

TEST(AlphaTest, TrainableAndFixed) {
  const AlphaParameter t = AlphaParameter::Trainable(0.0);
  EXPECT_DOUBLE_EQ(t.value(), 0.5);
  EXPECT_DOUBLE_EQ(t.derivative(), 0.25);
  const AlphaParameter f = AlphaParameter::Fixed(0.3);
  EXPECT_DOUBLE_EQ(f.value(), 0.3);
  EXPECT_EQ(f.derivative(), 0.0);
  EXPECT_THROW(AlphaParameter::Fixed(1.2), ConfigError);
  EXPECT_THROW(AlphaParameter::Fixed(-0.1), ConfigError);
  EXPECT_LE(AlphaParameter::Trainable(50.0).value(), 1.0);
  EXPECT_GE(AlphaParameter::Trainable(-50.0).value(), 0.0);
}

TEST(HybridTest, BlendsComponents) {
  Rng rng(1);
  const ModelSpec spec = SmallSpec(3, 2, {4}, Activation::kRelu);
  HybridModel model = oracle::RandomModel(rng, spec, AlphaParameter::Fixed(0.25));
  const std::vector<double> x = {0.2, 0.5, 0.9};
  const double lin = model.LinearScore(x);
  const double net = model.NonlinearScore(x);
  EXPECT_NEAR(model.GlobalScore(x), 0.25 * lin + 0.75 * net, 1e-15);
  EXPECT_NEAR(model.PredictProba(x), Sigmoid(model.GlobalScore(x)), 1e-15);
  model.mutable_alpha_parameter() = AlphaParameter::Fixed(1.0);
  EXPECT_EQ(model.GlobalScore(x), lin);
  model.mutable_alpha_parameter() = AlphaParameter::Fixed(0.0);
  EXPECT_EQ(model.GlobalScore(x), net);
}

TEST(HybridTest, LinearActivationsCollapseToAdditive) {
  Rng rng(2);
  for (int m = 0; m < 20; ++m) {
    const ModelSpec spec = SmallSpec(3, 1 + m % 4, {5, 4}, Activation::kLinear);
    const HybridModel model =
        oracle::RandomModel(rng, spec, AlphaParameter::Trainable(rng.Uniform(-2, 2)));
    const CollapsedAdditiveModel collapsed = CollapseToAdditive(model);
    for (int s = 0; s < 50; ++s) {
      std::vector<double> x(3);
      for (double& v : x) v = rng.Uniform01();
      EXPECT_NEAR(collapsed.GlobalScore(x), model.GlobalScore(x), 1e-9);
    }
  }
}

TEST(HybridTest, CollapseRejectsReluNetwork) {
  Rng rng(3);
  const HybridModel model =
      oracle::RandomModel(rng, SmallSpec(2, 2, {3}, Activation::kRelu), AlphaParameter::Trainable());
  EXPECT_THROW(CollapseToAdditive(model), UsageError);
}

TEST(HybridTest, PartitionFeedsSubsetToAdditive) {
  ModelSpec spec = SmallSpec(3, 2, {4}, Activation::kRelu);
  spec.linear_attrs = {1};
  spec.linear_degrees = {3};
  Rng rng(4);
  const HybridModel model = oracle::RandomModel(rng, spec, AlphaParameter::Fixed(1.0));
  EXPECT_EQ(model.additive().num_attributes(), 1u);
  EXPECT_EQ(model.network_basis().width(), 6u);
  const std::vector<double> a = {0.1, 0.5, 0.9};
  const std::vector<double> b = {0.8, 0.5, 0.2};
  EXPECT_EQ(model.GlobalScore(a), model.GlobalScore(b));
}

TEST(HybridTest, SpecValidation) {
  ModelSpec spec = ModelSpec::Uniform(3, 2);
  spec.linear_attrs = {0, 3};
  spec.linear_degrees = {2, 2};
  EXPECT_THROW(spec.Validate(), SchemaError);
  spec.linear_attrs = {0, 0};
  EXPECT_THROW(spec.Validate(), SchemaError);
  spec = ModelSpec::Uniform(3, 2);
  spec.network_degrees = {2, 0, 2};
  EXPECT_THROW(spec.Validate(), ConfigError);
  Rng rng(5);
  const HybridModel model = HybridModel::Create(ModelSpec::Uniform(3, 2), AlphaParameter::Trainable(), rng);
  EXPECT_THROW(model.GlobalScore(std::vector<double>{0.1, 0.2}), SchemaError);
}

TEST(HybridTest, ParameterRoundTripAndProjection) {
  Rng rng(6);
  HybridModel model = oracle::RandomModel(rng, SmallSpec(2, 3, {4}, Activation::kRelu),
                                          AlphaParameter::Trainable(0.3));
  std::vector<double> params = model.Parameters();
  EXPECT_EQ(params.size(), model.num_parameters());
  EXPECT_EQ(params[0], model.alpha_parameter().raw);
  params[1] = -2.0;
  model.SetParameters(params);
  EXPECT_EQ(model.Parameters(), params);
  model.Project();
  EXPECT_EQ(model.additive().weights()[0], 0.0);
  const HybridModel fixed = oracle::RandomModel(rng, SmallSpec(2, 3, {4}, Activation::kRelu),
                                                AlphaParameter::Fixed(0.5));
  EXPECT_EQ(fixed.num_parameters() + 1, model.num_parameters());
}

struct GradientCase {
  AlphaParameter alpha;
  LossVariant variant;
};

TEST(LossTest, GradientMatchesFiniteDifferences) {
  Rng rng(7);
  const GradientCase cases[] = {
      {AlphaParameter::Trainable(0.4), LossVariant::kMse},
      {AlphaParameter::Trainable(-0.7), LossVariant::kMseLinearReg},
      {AlphaParameter::Trainable(1.1), LossVariant::kMseBalancedReg},
      {AlphaParameter::Fixed(0.6), LossVariant::kMse},
      {AlphaParameter::Fixed(1.0), LossVariant::kMse},
      {AlphaParameter::Fixed(0.0), LossVariant::kMseLinearReg},
  };
  for (const GradientCase& c : cases) {
    for (int t = 0; t < 4; ++t) {
      const ModelSpec spec = SmallSpec(3, 2, {4, 3}, Activation::kSigmoid);
      const HybridModel model = oracle::RandomModel(rng, spec, c.alpha);
      const TrainingSet batch =
          t % 2 == 0 ? RandomPairs(rng, 8, 3, 12)
                     : TrainingSet::Pointwise(oracle::RandomItems(rng, 6, 3),
                                              std::vector<double>{0, 1, 1, 0, 1, 0});
      std::vector<double> analytic;
      const double loss = LossGradient(model, batch, c.variant, analytic);
      EXPECT_NEAR(loss, LossRegularized(model, batch, c.variant), 1e-12);
      HybridModel probe = model;
      const auto fd = oracle::FiniteDifference(
          [&](std::span<const double> p) {
            probe.SetParameters(p);
            return LossRegularized(probe, batch, c.variant);
          },
          model.Parameters());
      EXPECT_LE(oracle::MaxRelativeError(analytic, fd), 1e-4)
          << LossVariantName(c.variant) << " alpha " << c.alpha.value();
    }
  }
}

TEST(LossTest, RegularizersAtKnownAlpha) {
  Rng rng(8);
  const TrainingSet batch = RandomPairs(rng, 5, 2, 6);
  const HybridModel model =
      oracle::RandomModel(rng, SmallSpec(2, 1, {3}, Activation::kRelu), AlphaParameter::Fixed(0.25));
  const double mse = Loss(model, batch);
  EXPECT_NEAR(LossRegularized(model, batch, LossVariant::kMse), mse, 1e-15);
  EXPECT_NEAR(LossRegularized(model, batch, LossVariant::kMseLinearReg), mse + 0.5625, 1e-12);
  EXPECT_NEAR(LossRegularized(model, batch, LossVariant::kMseBalancedReg), mse + 0.25, 1e-12);
}

TEST(LossTest, ExampleLogits) {
  const std::vector<double> scores = {0.5, 2.0};
  Example point{1, Example::kNone, 1.0};
  Example pair{0, 1, 0.0};
  EXPECT_EQ(ExampleLogit(point, scores), 2.0);
  EXPECT_EQ(ExampleLogit(pair, scores), -1.5);
  TrainingSet empty;
  Rng rng(9);
  const HybridModel model = HybridModel::Create(ModelSpec::Uniform(2, 1), AlphaParameter::Trainable(), rng);
  EXPECT_THROW(Loss(model, empty), UsageError);
}

TEST(LossTest, VariantNames) {
  EXPECT_EQ(ParseLossVariant("mse"), LossVariant::kMse);
  EXPECT_EQ(ParseLossVariant("reg-linear"), LossVariant::kMseLinearReg);
  EXPECT_EQ(ParseLossVariant("mse_balanced_reg"), LossVariant::kMseBalancedReg);
  EXPECT_THROW(ParseLossVariant("hinge"), ConfigError);
}

TEST(TrainingSetTest, ValidateRejectsBadExamples) {
  TrainingSet set = TrainingSet::Pointwise(Matrix(2, 1, {0.1, 0.2}), std::vector<double>{0, 1});
  EXPECT_NO_THROW(set.Validate());
  set.examples[0].label = 0.5;
  EXPECT_THROW(set.Validate(), SchemaError);
  set.examples[0].label = 1.0;
  set.examples[1].second = 5;
  EXPECT_THROW(set.Validate(), SchemaError);
  EXPECT_THROW(TrainingSet::Pointwise(Matrix(2, 1), std::vector<double>{1}), SchemaError);
}

TEST(OptimizerTest, FirstSteps) {
  const std::vector<double> grad = {0.5, -2.0};
  std::vector<double> p = {1.0, 1.0};
  MakeOptimizer(OptimizerKind::kSgd, 0.1, 2)->Step(p, grad);
  EXPECT_NEAR(p[0], 0.95, 1e-15);
  EXPECT_NEAR(p[1], 1.2, 1e-15);
  p = {1.0, 1.0};
  MakeOptimizer(OptimizerKind::kAdam, 0.1, 2)->Step(p, grad);
  EXPECT_NEAR(p[0], 0.9, 1e-7);
  EXPECT_NEAR(p[1], 1.1, 1e-7);
  p = {1.0, 1.0};
  MakeOptimizer(OptimizerKind::kAdagrad, 0.1, 2)->Step(p, grad);
  EXPECT_NEAR(p[0], 0.9, 1e-7);
  EXPECT_NEAR(p[1], 1.1, 1e-7);
  EXPECT_THROW(MakeOptimizer(OptimizerKind::kSgd, 0.0, 2), ConfigError);
  EXPECT_EQ(ParseOptimizer("adagrad"), OptimizerKind::kAdagrad);
  EXPECT_THROW(ParseOptimizer("rmsprop"), ConfigError);
}

TEST(OptimizerTest, AdamMinimizesQuadratic) {
  std::vector<double> p = {3.0, -2.0};
  auto opt = MakeOptimizer(OptimizerKind::kAdam, 0.05, 2);
  for (int i = 0; i < 2000; ++i) {
    const std::vector<double> g = {2 * (p[0] - 1), 2 * (p[1] + 1)};
    opt->Step(p, g);
  }
  EXPECT_NEAR(p[0], 1.0, 1e-3);
  EXPECT_NEAR(p[1], -1.0, 1e-3);
}

TEST(TrainConfigTest, Validation) {
  TrainConfig c;
  c.learning_rate = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = TrainConfig{};
  c.alpha_mode = AlphaMode::kFixed;
  c.fixed_alpha = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.fixed_alpha = 0.7;
  EXPECT_DOUBLE_EQ(c.InitialAlpha().value(), 0.7);
  EXPECT_DOUBLE_EQ(TrainConfig{}.InitialAlpha().value(), 0.5);
}

TrainingSet LinearTask(std::uint64_t seed, std::size_t items) {
  Rng rng(seed);
  Matrix x = oracle::RandomItems(rng, items, 3);
  std::vector<double> scores(items);
  for (std::size_t r = 0; r < items; ++r) scores[r] = 2 * x(r, 0) - x(r, 1) + 0.5 * x(r, 2);
  return PairTrainingSet(std::move(x), scores);
}

TEST(TrainTest, LossDecreasesAndWeightsStayNonNegative) {
  const TrainingSet data = LinearTask(10, 40);
  TrainConfig config;
  config.learning_rate = 0.01;
  config.iterations = 60;
  config.batch_size = 64;
  config.seed = 3;
  const TrainResult r = Train(data, ModelSpec::Uniform(3, 2), config);
  ASSERT_EQ(r.report.loss_trace.size(), 60u);
  EXPECT_LT(r.report.loss_trace.back(), r.report.loss_trace.front());
  for (double w : r.model.additive().weights()) EXPECT_GE(w, 0.0);
  EXPECT_GE(r.model.alpha(), 0.0);
  EXPECT_LE(r.model.alpha(), 1.0);
  EXPECT_EQ(r.report.final_alpha, r.model.alpha());
}

TEST(TrainTest, FixedAlphaDoesNotMove) {
  const TrainingSet data = LinearTask(11, 20);
  TrainConfig config;
  config.iterations = 5;
  config.alpha_mode = AlphaMode::kFixed;
  config.fixed_alpha = 0.35;
  const TrainResult r = Train(data, ModelSpec::Uniform(3, 2), config);
  EXPECT_EQ(r.model.alpha(), 0.35);
}

TEST(TrainTest, DeterministicForSameSeed) {
  const TrainingSet data = LinearTask(12, 25);
  TrainConfig config;
  config.iterations = 10;
  config.seed = 99;
  const TrainResult a = Train(data, ModelSpec::Uniform(3, 3), config);
  const TrainResult b = Train(data, ModelSpec::Uniform(3, 3), config);
  EXPECT_EQ(a.model.Parameters(), b.model.Parameters());
  EXPECT_EQ(a.report.loss_trace, b.report.loss_trace);
  config.seed = 100;
  const TrainResult c = Train(data, ModelSpec::Uniform(3, 3), config);
  EXPECT_NE(a.model.Parameters(), c.model.Parameters());
}

TEST(TrainTest, ZeroIterationsReturnsInitialModel) {
  const TrainingSet data = LinearTask(13, 10);
  TrainConfig config;
  config.iterations = 0;
  const TrainResult r = Train(data, ModelSpec::Uniform(3, 1), config);
  EXPECT_TRUE(r.report.loss_trace.empty());
  EXPECT_DOUBLE_EQ(r.model.alpha(), 0.5);
}

TEST(TrainTest, HugeLearningRateDiverges) {
  const TrainingSet data = LinearTask(14, 30);
  TrainConfig config;
  config.optimizer = OptimizerKind::kSgd;
  config.learning_rate = 1e308;
  config.iterations = 20;
  config.batch_size = 0;
  EXPECT_THROW(Train(data, ModelSpec::Uniform(3, 2), config), TrainingDiverged);
}

TEST(TrainTest, EpochCallbackSeesEveryPass) {
  const TrainingSet data = LinearTask(15, 10);
  TrainConfig config;
  config.iterations = 7;
  std::vector<int> seen;
  Train(data, ModelSpec::Uniform(3, 1), config,
        [&](int epoch, const HybridModel&) { seen.push_back(epoch); });
  EXPECT_EQ(seen, (std::vector<int>{1, 2, 3, 4, 5, 6, 7}));
}

TEST(CrossValidationTest, SelectsWithinCap) {
  const TrainingSet data = LinearTask(16, 30);
  TrainConfig config;
  config.iterations = 15;
  config.batch_size = 0;
  config.learning_rate = 0.01;
  const CvSelection cv = SelectIterationsCv(data, ModelSpec::Uniform(3, 2), config);
  EXPECT_EQ(cv.fold_best.size(), 5u);
  EXPECT_GE(cv.iterations, 1);
  EXPECT_LE(cv.iterations, 15);
  for (int b : cv.fold_best) {
    EXPECT_GE(b, 1);
    EXPECT_LE(b, 15);
  }
  const CvSelection again = SelectIterationsCv(data, ModelSpec::Uniform(3, 2), config);
  EXPECT_EQ(cv.fold_best, again.fold_best);
  EXPECT_THROW(SelectIterationsCv(data, ModelSpec::Uniform(3, 2), config, 1), ConfigError);
}

}  // namespace
}  // namespace mcda
