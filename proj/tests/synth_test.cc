#include <gtest/gtest.h>

#include <cmath>

#include "mcda/errors.h"
#include "mcda/ranking.h"
#include "mcda/synth.h"

namespace mcda {
namespace {

TEST(SynthTest, ShapesAndRange) {
  SyntheticSpec spec;
  spec.seed = 3;
  const SyntheticDataset d = GenerateDataset(spec);
  EXPECT_EQ(d.items.rows(), 250u);
  EXPECT_EQ(d.items.cols(), 3u);
  EXPECT_EQ(d.scores.size(), 250u);
  for (double v : d.items.data()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  EXPECT_EQ(LabeledPairs(d).examples.size(), 31125u);
}

TEST(SynthTest, SameSeedSameData) {
  SyntheticSpec spec;
  spec.family = Family::kPolynomial3;
  spec.seed = 17;
  const SyntheticDataset a = GenerateDataset(spec);
  const SyntheticDataset b = GenerateDataset(spec);
  EXPECT_EQ(a.items, b.items);
  EXPECT_EQ(a.scores, b.scores);
  spec.seed = 18;
  EXPECT_NE(GenerateDataset(spec).scores, a.scores);
}

TEST(SynthTest, InteractionCounts) {
  Rng rng(1);
  const GroundTruth p3 = GenerateTruth(Family::kPolynomial3, 5, rng);
  EXPECT_EQ(p3.CountInteractions(2), 10u);
  EXPECT_EQ(p3.CountInteractions(3), 0u);
  const GroundTruth p15 = GenerateTruth(Family::kPolynomial15, 5, rng);
  EXPECT_EQ(p15.CountInteractions(2), 10u);
  EXPECT_EQ(p15.CountInteractions(3), 10u);
  EXPECT_EQ(p15.CountInteractions(5), 1u);
  EXPECT_EQ(p15.interactions.size(), 26u);
  const GroundTruth lin = GenerateTruth(Family::kLinear, 5, rng);
  EXPECT_TRUE(lin.interactions.empty());
}

TEST(SynthTest, LinearNoiselessScoreIsSum) {
  SyntheticSpec spec;
  spec.noise_scale = 0.0;
  spec.seed = 2;
  const SyntheticDataset d = GenerateDataset(spec);
  for (std::size_t r = 0; r < 10; ++r) {
    const auto x = d.items.row(r);
    EXPECT_NEAR(d.scores[r], x[0] + x[1] + x[2], 1e-12);
  }
}

TEST(SynthTest, NoiseHasRequestedScale) {
  SyntheticSpec spec;
  spec.num_alternatives = 20000;
  spec.seed = 4;
  const SyntheticDataset d = GenerateDataset(spec);
  double sum = 0.0, sq = 0.0;
  for (std::size_t r = 0; r < d.items.rows(); ++r) {
    const double e = d.scores[r] - d.truth.Score(d.items.row(r));
    sum += e;
    sq += e * e;
  }
  const double n = static_cast<double>(d.items.rows());
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(std::sqrt(sq / n), 1.0, 0.03);
}

TEST(SynthTest, ValidationErrors) {
  SyntheticSpec spec;
  spec.family = Family::kPolynomial15;
  spec.num_attributes = 16;
  EXPECT_THROW(spec.Validate(), ConfigError);
  spec.num_attributes = 15;
  EXPECT_NO_THROW(spec.Validate());
  spec = SyntheticSpec{};
  spec.num_alternatives = 1;
  EXPECT_THROW(spec.Validate(), ConfigError);
  EXPECT_THROW(SyntheticModel(5), ConfigError);
  EXPECT_THROW(ParseFamily("cubic"), ConfigError);
  EXPECT_EQ(ParseFamily("poly15"), Family::kPolynomial15);
  EXPECT_EQ(FamilyName(Family::kPolynomial3), "polynomial-3");
}

TEST(SynthTest, SyntheticModelMarginalsSpanUnitRange) {
  for (int kind = 1; kind <= 4; ++kind) {
    const GroundTruth t = SyntheticModel(kind);
    ASSERT_EQ(t.num_attributes(), 3u);
    EXPECT_EQ(t.noise_scale, 0.0);
    for (const MarginalFunction& m : t.marginals) {
      double lo = m(0.0), hi = m(0.0);
      for (int g = 0; g <= 1000; ++g) {
        lo = std::min(lo, m(g / 1000.0));
        hi = std::max(hi, m(g / 1000.0));
      }
      EXPECT_NEAR(lo, 0.0, 1e-12);
      EXPECT_NEAR(hi, 1.0, 1e-12);
    }
  }
  const GroundTruth one = SyntheticModel(1);
  EXPECT_LT(one.marginals[1](0.9), one.marginals[1](0.1));
  EXPECT_EQ(SyntheticModel(4).CountInteractions(3), 1u);
  EXPECT_EQ(SyntheticModel(3).interactions.size(), 0u);
}

TEST(SynthTest, TruthJsonRoundTrip) {
  Rng rng(9);
  const GroundTruth t = GenerateTruth(Family::kPolynomial15, 4, rng);
  const GroundTruth back = GroundTruth::FromJson(t.ToJson());
  const std::vector<double> x = {0.1, 0.7, 0.4, 0.9};
  EXPECT_EQ(back.Score(x), t.Score(x));
  EXPECT_EQ(back.interactions.size(), t.interactions.size());
}

}  // namespace
}  // namespace mcda
