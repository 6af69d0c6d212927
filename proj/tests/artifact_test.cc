#include <gtest/gtest.h>

#include <filesystem>

#include "mcda/artifact.h"
#include "mcda/errors.h"
#include "oracles.h"

namespace mcda {
namespace {

TEST(ArtifactTest, ModelJsonRoundTripIsExact) {
  Rng rng(1);
  ModelSpec spec = ModelSpec::Uniform(3, 2);
  spec.linear_attrs = {0, 2};
  spec.linear_degrees = {3, 1};
  spec.hidden_widths = {5, 4};
  spec.activation = Activation::kSigmoid;
  const HybridModel model = oracle::RandomModel(rng, spec, AlphaParameter::Trainable(0.37));
  const HybridModel back = ModelFromJson(ModelToJson(model));
  EXPECT_TRUE(back == model);
  const std::vector<double> x = {0.1, 0.5, 0.9};
  EXPECT_EQ(back.GlobalScore(x), model.GlobalScore(x));
  const HybridModel fixed = oracle::RandomModel(rng, ModelSpec::Uniform(2, 1), AlphaParameter::Fixed(0.8));
  EXPECT_EQ(ModelFromJson(ModelToJson(fixed)).alpha(), 0.8);
}

TEST(ArtifactTest, FileRoundTripAndVersionCheck) {
  Rng rng(2);
  const HybridModel model = oracle::RandomModel(rng, ModelSpec::Uniform(2, 3), AlphaParameter::Trainable());
  ModelArtifact artifact{model,
                        {{"x1", "x1", AttributeKind::kNumeric, 0, 10},
                         {"x2", "x2", AttributeKind::kNumeric, 0, 1}},
                        {{"k", 1}},
                        "abc"};
  const auto path = (std::filesystem::temp_directory_path() / "mcda_artifact_test.json").string();
  SaveArtifact(path, artifact);
  const ModelArtifact back = LoadArtifact(path);
  EXPECT_TRUE(back.model == model);
  EXPECT_EQ(back.attributes[0].hi, 10.0);
  EXPECT_EQ(back.config_hash, "abc");
  nlohmann::json j = ArtifactToJson(artifact);
  j["format"] = "mcda-model/0";
  EXPECT_THROW(ArtifactFromJson(j), ParseError);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadArtifact(path), ParseError);
}

TEST(ArtifactTest, TrainConfigRoundTripAndHash) {
  TrainConfig c;
  c.optimizer = OptimizerKind::kAdagrad;
  c.learning_rate = 0.02;
  c.alpha_mode = AlphaMode::kFixed;
  c.fixed_alpha = 0.3;
  c.loss = LossVariant::kMseBalancedReg;
  const TrainConfig back = TrainConfigFromJson(TrainConfigToJson(c));
  EXPECT_EQ(back.optimizer, c.optimizer);
  EXPECT_EQ(back.learning_rate, c.learning_rate);
  EXPECT_EQ(back.fixed_alpha, c.fixed_alpha);
  EXPECT_EQ(back.loss, c.loss);
  EXPECT_EQ(ConfigHash(TrainConfigToJson(c)), ConfigHash(TrainConfigToJson(back)));
  c.seed = 1;
  EXPECT_NE(ConfigHash(TrainConfigToJson(c)), ConfigHash(TrainConfigToJson(back)));
}

}  // namespace
}  // namespace mcda
