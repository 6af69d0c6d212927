#include <gtest/gtest.h>

#include <cmath>

#include "mcda/errors.h"
#include "mcda/ranking.h"
#include "oracles.h"

namespace mcda {
namespace {

TEST(PairsTest, CountsAndLabels) {
  EXPECT_EQ(NumPairs(3), 3u);
  EXPECT_EQ(NumPairs(250), 31125u);
  const std::vector<double> scores = {0.2, 0.9, 0.2};
  const auto pairs = BuildPairs(scores);
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[0].i, 0u);
  EXPECT_EQ(pairs[0].k, 1u);
  EXPECT_EQ(pairs[0].label, 0.0);
  EXPECT_EQ(pairs[1].k, 2u);
  EXPECT_EQ(pairs[1].label, 1.0);
  EXPECT_EQ(pairs[2].label, 1.0);
  EXPECT_THROW(BuildPairs(std::vector<double>{1.0}), ConfigError);
}

TEST(PairsTest, GeneratorMatchesBuildAndResets) {
  Rng rng(1);
  std::vector<double> scores(30);
  for (double& s : scores) s = rng.Uniform01();
  const auto all = BuildPairs(scores);
  PairGenerator gen(scores);
  RankingPair p;
  std::size_t count = 0;
  while (gen.Next(p)) {
    ASSERT_LT(count, all.size());
    EXPECT_EQ(p.i, all[count].i);
    EXPECT_EQ(p.k, all[count].k);
    EXPECT_LT(p.i, p.k);
    ++count;
  }
  EXPECT_EQ(count, NumPairs(30));
  gen.Reset();
  ASSERT_TRUE(gen.Next(p));
  EXPECT_EQ(p.i, 0u);
  EXPECT_EQ(p.k, 1u);
}

TEST(PairsTest, TrainingSetAndFeatures) {
  Rng rng(2);
  Matrix items = oracle::RandomItems(rng, 5, 2);
  const std::vector<double> scores = {1, 2, 3, 4, 5};
  const TrainingSet set = PairTrainingSet(items, scores);
  ASSERT_EQ(set.examples.size(), 10u);
  for (const Example& e : set.examples) {
    EXPECT_TRUE(e.is_pair());
    EXPECT_EQ(e.label, 0.0);
  }
  const BasisSpec spec = BasisSpec::Uniform(2, 2);
  const RankingPair pair{1, 3, 0.0};
  EXPECT_EQ(PairFeatures(items, pair, spec), PairwiseDiff(items.row(1), items.row(3), spec));
}

TEST(PreferenceTest, ThresholdClassification) {
  const PreferenceThresholds t;
  EXPECT_EQ(Classify(0.95, t), Preference::kPreferred);
  EXPECT_EQ(Classify(0.55, t), Preference::kPreferred);
  EXPECT_EQ(Classify(0.5, t), Preference::kIndifferent);
  EXPECT_EQ(Classify(0.45, t), Preference::kWorse);
  EXPECT_EQ(Classify(0.3, t), Preference::kWorse);
  EXPECT_EQ(PreferenceName(Preference::kIndifferent), "indifferent");
  EXPECT_THROW((PreferenceThresholds{0.6, 0.4}.Validate()), ConfigError);
  EXPECT_THROW((PreferenceThresholds{-0.1, 0.4}.Validate()), ConfigError);
}

TEST(PreferenceTest, IdenticalAlternativesAreIndifferent) {
  Rng rng(3);
  const HybridModel model =
      oracle::RandomModel(rng, ModelSpec::Uniform(3, 2), AlphaParameter::Fixed(1.0));
  const std::vector<double> x = {0.3, 0.3, 0.8};
  EXPECT_EQ(PairProbability(model, x, x), 0.5);
  EXPECT_EQ(Compare(model, x, x, PreferenceThresholds{}), Preference::kIndifferent);
}

TEST(PreferenceTest, LinearPartIsAntisymmetric) {
  Rng rng(4);
  const HybridModel model =
      oracle::RandomModel(rng, ModelSpec::Uniform(3, 3), AlphaParameter::Fixed(1.0));
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(3), b(3);
    for (double& v : a) v = rng.Uniform01();
    for (double& v : b) v = rng.Uniform01();
    EXPECT_NEAR(PairProbability(model, a, b) + PairProbability(model, b, a), 1.0, 1e-12);
  }
}

TEST(NormalizeTest, ScalesDifferencesAndPreservesOrder) {
  Rng rng(5);
  for (int m = 0; m < 50; ++m) {
    const HybridModel model = oracle::RandomModel(rng, ModelSpec::Uniform(3, 2),
                                                  AlphaParameter::Trainable(rng.Uniform(-2, 2)));
    const HybridModel norm = NormalizeModel(model);
    double sum = 0.0;
    for (double w : model.additive().weights()) sum += w;
    double norm_sum = 0.0;
    for (double w : norm.additive().weights()) norm_sum += w;
    EXPECT_NEAR(norm_sum, 1.0, 1e-12);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> a(3), b(3);
      for (double& v : a) v = rng.Uniform01();
      for (double& v : b) v = rng.Uniform01();
      const double d = model.GlobalScore(a) - model.GlobalScore(b);
      const double d_norm = norm.GlobalScore(a) - norm.GlobalScore(b);
      EXPECT_NEAR(d_norm * sum, d, 1e-10);
      EXPECT_EQ(std::signbit(d), std::signbit(d_norm));
    }
  }
}

TEST(NormalizeTest, UnitWeightSumLeavesModelUnchanged) {
  Rng rng(6);
  HybridModel model = oracle::RandomModel(rng, ModelSpec::Uniform(2, 2), AlphaParameter::Fixed(0.5));
  model.mutable_additive().mutable_weights() = {0.25, 0.75};
  const HybridModel norm = NormalizeModel(model);
  const std::vector<double> x = {0.4, 0.6};
  EXPECT_NEAR(norm.GlobalScore(x), model.GlobalScore(x), 1e-15);
}

TEST(NormalizeTest, ZeroWeightsAreDegenerate) {
  Rng rng(7);
  HybridModel model = oracle::RandomModel(rng, ModelSpec::Uniform(2, 2), AlphaParameter::Fixed(0.5));
  model.mutable_additive().mutable_weights() = {0.0, 0.0};
  EXPECT_THROW(NormalizeModel(model), DegenerateModelError);
}

TEST(NormalizeTest, TransformedThresholds) {
  const PreferenceThresholds t = TransformedThresholds({0.4, 0.6}, 0.8, 0.4);
  EXPECT_DOUBLE_EQ(t.eta1, 0.2);
  EXPECT_DOUBLE_EQ(t.eta2, 0.3);
}

TEST(RankTest, OrdersByScoreWithStableTies) {
  Rng rng(8);
  HybridModel model = HybridModel::Create(ModelSpec::Uniform(1, 1), AlphaParameter::Fixed(1.0), rng);
  model.mutable_additive().mutable_weights() = {2.0};
  model.mutable_additive().mutable_coeffs() = {1.0};
  const Matrix items(4, 1, {0.1, 0.9, 0.5, 0.9});
  const auto ranked = Rank(model, items);
  ASSERT_EQ(ranked.size(), 4u);
  EXPECT_EQ(ranked[0].index, 1u);
  EXPECT_EQ(ranked[1].index, 3u);
  EXPECT_EQ(ranked[2].index, 2u);
  EXPECT_EQ(ranked[3].index, 0u);
  EXPECT_EQ(ranked[0].rank, 1u);
  EXPECT_DOUBLE_EQ(ranked[0].score, 1.8);
  EXPECT_DOUBLE_EQ(ranked[0].normalized_score, 0.9);
  const auto single = Rank(model, Matrix(1, 1, {0.3}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].index, 0u);
}

TEST(RankTest, AgreesWithPairwiseComparison) {
  Rng rng(9);
  const HybridModel model =
      oracle::RandomModel(rng, ModelSpec::Uniform(3, 2), AlphaParameter::Trainable(0.2));
  const Matrix items = oracle::RandomItems(rng, 40, 3);
  const auto ranked = Rank(model, items);
  for (std::size_t r = 0; r + 1 < ranked.size(); ++r) {
    const double p = PairProbability(model, items.row(ranked[r].index),
                                     items.row(ranked[r + 1].index));
    EXPECT_GE(p, 0.5);
  }
}

}  // namespace
}  // namespace mcda
