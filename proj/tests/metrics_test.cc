#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mcda/errors.h"
#include "mcda/metrics.h"
#include "oracles.h"

namespace mcda {
namespace {

TEST(AucTest, SimpleCases) {
  EXPECT_EQ(Auc(std::vector<double>{0.1, 0.9}, std::vector<double>{0, 1}).auc, 1.0);
  EXPECT_EQ(Auc(std::vector<double>{0.9, 0.1}, std::vector<double>{0, 1}).auc, 0.0);
  EXPECT_EQ(Auc(std::vector<double>{0.5, 0.5}, std::vector<double>{0, 1}).auc, 0.5);
  const RocResult r =
      Auc(std::vector<double>{0.1, 0.4, 0.35, 0.8}, std::vector<double>{0, 0, 1, 1});
  EXPECT_EQ(r.auc, 0.75);
  EXPECT_EQ(r.n_pos, 2u);
  EXPECT_EQ(r.n_neg, 2u);
  EXPECT_EQ(r.curve.front().fpr, 0.0);
  EXPECT_EQ(r.curve.back().tpr, 1.0);
}

TEST(AucTest, MatchesBruteForceWithTies) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.UniformIndex(99);
    std::vector<double> scores(n), labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.UniformIndex(8)) / 4.0;
      labels[i] = rng.Uniform01() < 0.4 ? 1.0 : 0.0;
    }
    labels[0] = 1.0;
    labels[1] = 0.0;
    EXPECT_EQ(Auc(scores, labels).auc, oracle::BruteForceAuc(scores, labels));
  }
}

TEST(AucTest, RejectsUndefinedInputs) {
  EXPECT_THROW(Auc(std::vector<double>{0.1, 0.2}, std::vector<double>{1, 1}), EvaluationError);
  EXPECT_THROW(Auc(std::vector<double>{0.1, 0.2}, std::vector<double>{0, 2}), EvaluationError);
  EXPECT_THROW(Auc(std::vector<double>{0.1, std::nan("")}, std::vector<double>{0, 1}),
               EvaluationError);
  EXPECT_THROW(Auc(std::vector<double>{0.1}, std::vector<double>{0, 1}), EvaluationError);
}

TEST(SplitTest, PartitionsAllIndices) {
  const SplitIndices s = Split(10, 0.7, 5);
  EXPECT_EQ(s.train.size(), 7u);
  EXPECT_EQ(s.test.size(), 3u);
  std::vector<bool> seen(10, false);
  for (auto i : s.train) seen[i] = true;
  for (auto i : s.test) {
    EXPECT_FALSE(seen[i]);
    seen[i] = true;
  }
  for (bool b : seen) EXPECT_TRUE(b);
  EXPECT_EQ(Split(10, 0.7, 5).train, s.train);
  EXPECT_THROW(Split(10, 1.5, 5), ConfigError);
}

TEST(SummaryTest, MeanStdAndPearson) {
  const MeanStd m = Summarize(std::vector<double>{1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.std, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_EQ(Summarize(std::vector<double>{7}).std, 0.0);
  EXPECT_NEAR(Pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(Pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}), -1.0, 1e-15);
  EXPECT_EQ(Pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), 0.0);
}

}  // namespace
}  // namespace mcda
