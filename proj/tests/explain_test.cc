#include <gtest/gtest.h>

#include <cmath>

#include "mcda/errors.h"
#include "mcda/explain.h"
#include "oracles.h"

namespace mcda {
namespace {

HybridModel ModelWithMarginals(std::vector<double> weights, std::vector<double> coeffs, int degree) {
  Rng rng(1);
  HybridModel model = HybridModel::Create(ModelSpec::Uniform(weights.size(), degree),
                                          AlphaParameter::Fixed(1.0), rng);
  model.mutable_additive().mutable_weights() = std::move(weights);
  model.mutable_additive().mutable_coeffs() = std::move(coeffs);
  return model;
}

TEST(PowerSeriesTest, Evaluates) {
  const std::vector<double> c = {1.0, -2.0, 3.0};
  EXPECT_DOUBLE_EQ(EvaluatePowerSeries(c, 0.5), 0.5 - 0.5 + 0.375);
  EXPECT_EQ(EvaluatePowerSeries(c, 0.0), 0.0);
}

TEST(DiagnoseTest, QuadraticHasOneRootAndOneMinimum) {
  // v(x) = x^2 - x/2: root at 0.5, minimum at 0.25, no inflection.
  const auto d = DiagnosePolynomial(std::vector<double>{-0.5, 1.0});
  ASSERT_EQ(d.zero_crossings.size(), 1u);
  EXPECT_NEAR(d.zero_crossings[0], 0.5, 1e-8);
  ASSERT_EQ(d.inflexions.size(), 1u);
  EXPECT_NEAR(d.inflexions[0].x, 0.25, 1e-8);
  EXPECT_EQ(d.inflexions[0].kind, ExtremumKind::kMinimum);
  EXPECT_TRUE(d.concavity_changes.empty());
  EXPECT_NEAR(d.max_abs, 0.5, 1e-9);
}

TEST(DiagnoseTest, CubicConcavityChange) {
  // v(x) = (x - 0.5)^3 + 0.125 = 0.75x - 1.5x^2 + x^3: v'' = 6x - 3.
  const auto d = DiagnosePolynomial(std::vector<double>{0.75, -1.5, 1.0});
  ASSERT_EQ(d.concavity_changes.size(), 1u);
  EXPECT_NEAR(d.concavity_changes[0], 0.5, 1e-8);
  EXPECT_TRUE(d.inflexions.empty());
}

TEST(DiagnoseTest, MonotoneLinearHasNoCriticalPoints) {
  const auto d = DiagnosePolynomial(std::vector<double>{2.0});
  EXPECT_TRUE(d.zero_crossings.empty());
  EXPECT_TRUE(d.inflexions.empty());
  EXPECT_TRUE(d.concavity_changes.empty());
}

TEST(DiagnoseTest, MaximumDetected) {
  // v(x) = x - x^2: maximum at 0.5, boundary root at 1 excluded.
  const auto d = DiagnosePolynomial(std::vector<double>{1.0, -1.0});
  ASSERT_EQ(d.inflexions.size(), 1u);
  EXPECT_EQ(d.inflexions[0].kind, ExtremumKind::kMaximum);
  EXPECT_TRUE(d.zero_crossings.empty());
}

TEST(DiagnoseTest, NearZeroCurveFlagged) {
  const HybridModel model = ModelWithMarginals({1.0, 1.0}, {1.0, 0.0, 1e-4, 0.0}, 2);
  const auto diag = DiagnoseModel(model);
  ASSERT_EQ(diag.size(), 2u);
  EXPECT_FALSE(diag[0].near_zero);
  EXPECT_TRUE(diag[1].near_zero);
}

TEST(CurveTest, SampledCurveIncludesWeight) {
  const HybridModel model = ModelWithMarginals({2.0, 1.0}, {1.0, 1.0, 0.5, 0.0}, 2);
  const MarginalCurve c = SampleMarginalCurve(model, 0, 11);
  ASSERT_EQ(c.x.size(), 11u);
  EXPECT_EQ(c.x.front(), 0.0);
  EXPECT_EQ(c.x.back(), 1.0);
  EXPECT_DOUBLE_EQ(c.y.back(), 4.0);
  EXPECT_EQ(c.coefficients, (std::vector<double>{2.0, 2.0}));
  EXPECT_THROW(SampleMarginalCurve(model, 0, 1), ConfigError);
  EXPECT_THROW(SampleMarginalCurve(model, 5, 10), SchemaError);
}

TEST(ImportanceTest, NormalizedAndRanked) {
  const HybridModel model = ModelWithMarginals({1.0, 3.0, 1.0}, {1, 1, 1}, 1);
  const auto imp = AttributeImportance(model);
  ASSERT_EQ(imp.size(), 3u);
  EXPECT_EQ(imp[0].name, "x2");
  EXPECT_DOUBLE_EQ(imp[0].normalized, 0.6);
  EXPECT_EQ(imp[1].name, "x1");
  EXPECT_EQ(imp[2].rank, 3u);
  double sum = 0.0;
  for (const auto& e : imp) sum += e.normalized;
  EXPECT_NEAR(sum, 1.0, 1e-15);
  EXPECT_THROW(AttributeImportance(ModelWithMarginals({0.0, 0.0}, {1, 1}, 1)),
               DegenerateModelError);
}

TEST(AlphaInterpretationTest, Bands) {
  EXPECT_EQ(InterpretAlpha(0.05), AlphaRecommendation::kFullComplexity);
  EXPECT_EQ(InterpretAlpha(0.5), AlphaRecommendation::kAcceptHybrid);
  EXPECT_EQ(InterpretAlpha(0.95), AlphaRecommendation::kSimplerModel);
  EXPECT_EQ(RecommendationName(InterpretAlpha(0.95)), "suggest-simpler-model");
  EXPECT_THROW(InterpretAlpha(1.1), ConfigError);
}

}  // namespace
}  // namespace mcda
