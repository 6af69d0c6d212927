#include "mcda/artifact.h"

#include <fstream>
#include <stdexcept>

#include "mcda/errors.h"

namespace mcda {

nlohmann::json TrainConfigToJson(const TrainConfig& config) {
  return {{"optimizer", OptimizerName(config.optimizer)},
          {"learning_rate", config.learning_rate},
          {"iterations", config.iterations},
          {"batch_size", config.batch_size},
          {"seed", config.seed},
          {"alpha_mode", config.alpha_mode == AlphaMode::kTrainable ? "trainable" : "fixed"},
          {"fixed_alpha", config.fixed_alpha},
          {"loss", LossVariantName(config.loss)}};
}

TrainConfig TrainConfigFromJson(const nlohmann::json& j) {
  TrainConfig config;
  config.optimizer = ParseOptimizer(j.at("optimizer").get<std::string>());
  config.learning_rate = j.at("learning_rate").get<double>();
  config.iterations = j.at("iterations").get<int>();
  config.batch_size = j.at("batch_size").get<std::size_t>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.alpha_mode = j.at("alpha_mode").get<std::string>() == "trainable" ? AlphaMode::kTrainable
                                                                           : AlphaMode::kFixed;
  config.fixed_alpha = j.at("fixed_alpha").get<double>();
  config.loss = ParseLossVariant(j.at("loss").get<std::string>());
  return config;
}

std::string ConfigHash(const nlohmann::json& j) {
  const std::string text = j.dump();
  return Hex64(Fnv1a(text.data(), text.size()));
}

nlohmann::json ModelToJson(const HybridModel& model) {
  const ModelSpec& spec = model.spec();
  nlohmann::json j;
  j["attributes"] = spec.attribute_names;
  j["linear_attrs"] = spec.linear_attrs;
  j["network_degrees"] = spec.network_degrees;
  j["linear_degrees"] = spec.linear_degrees;
  j["hidden_widths"] = spec.hidden_widths;
  j["activation"] = ActivationName(spec.activation);
  const AlphaParameter& alpha = model.alpha_parameter();
  j["alpha"] = {{"mode", alpha.mode == AlphaMode::kTrainable ? "trainable" : "fixed"},
                {"raw", alpha.raw},
                {"fixed", alpha.fixed},
                {"value", model.alpha()}};
  j["additive"] = {{"weights", model.additive().weights()},
                   {"coeffs", model.additive().coeffs()}};
  nlohmann::json layers = nlohmann::json::array();
  for (const DenseLayer& layer : model.mlp().layers()) {
    layers.push_back({{"inputs", layer.inputs()},
                      {"outputs", layer.outputs()},
                      {"activation", ActivationName(layer.activation)},
                      {"weights", layer.weights.data()},
                      {"bias", layer.bias}});
  }
  j["mlp"] = {{"input_width", model.mlp().input_width()},
              {"layers", std::move(layers)},
              {"head", model.mlp().head()}};
  return j;
}

HybridModel ModelFromJson(const nlohmann::json& j) {
  ModelSpec spec;
  spec.attribute_names = j.at("attributes").get<std::vector<std::string>>();
  spec.linear_attrs = j.at("linear_attrs").get<std::vector<std::size_t>>();
  spec.network_degrees = j.at("network_degrees").get<std::vector<int>>();
  spec.linear_degrees = j.at("linear_degrees").get<std::vector<int>>();
  spec.hidden_widths = j.at("hidden_widths").get<std::vector<std::size_t>>();
  spec.activation = ParseActivation(j.at("activation").get<std::string>());

  const auto& a = j.at("alpha");
  AlphaParameter alpha = a.at("mode").get<std::string>() == "trainable"
                             ? AlphaParameter::Trainable(a.at("raw").get<double>())
                             : AlphaParameter::Fixed(a.at("fixed").get<double>());

  std::vector<int> linear_degrees = spec.linear_degrees;
  AdditiveComponent additive(BasisSpec(std::move(linear_degrees)),
                             j.at("additive").at("weights").get<std::vector<double>>(),
                             j.at("additive").at("coeffs").get<std::vector<double>>());

  std::vector<DenseLayer> layers;
  for (const auto& l : j.at("mlp").at("layers")) {
    const auto inputs = l.at("inputs").get<std::size_t>();
    const auto outputs = l.at("outputs").get<std::size_t>();
    auto weights = l.at("weights").get<std::vector<double>>();
    if (weights.size() != inputs * outputs) throw ParseError("layer weight count mismatch");
    layers.push_back({Matrix(inputs, outputs, std::move(weights)),
                      l.at("bias").get<std::vector<double>>(),
                      ParseActivation(l.at("activation").get<std::string>())});
  }
  MlpComponent mlp(j.at("mlp").at("input_width").get<std::size_t>(), std::move(layers),
                   j.at("mlp").at("head").get<std::vector<double>>());
  return HybridModel(std::move(spec), std::move(additive), std::move(mlp), alpha);
}

nlohmann::json ArtifactToJson(const ModelArtifact& artifact) {
  nlohmann::json j;
  j["format"] = kArtifactFormat;
  j["config_hash"] = artifact.config_hash;
  j["training"] = artifact.training;
  nlohmann::json attrs = nlohmann::json::array();
  for (const EncodedAttribute& a : artifact.attributes) {
    attrs.push_back({{"name", a.name},
                     {"source", a.source},
                     {"kind", a.kind == AttributeKind::kNumeric ? "numeric" : "binary"},
                     {"lo", a.lo},
                     {"hi", a.hi}});
  }
  j["attribute_bounds"] = std::move(attrs);
  j["model"] = ModelToJson(artifact.model);
  return j;
}

ModelArtifact ArtifactFromJson(const nlohmann::json& j) {
  try {
    const std::string format = j.at("format").get<std::string>();
    if (format != kArtifactFormat) {
      throw ParseError("artifact version mismatch: found '" + format + "', expected '" +
                       std::string(kArtifactFormat) + "'");
    }
    ModelArtifact artifact;
    artifact.model = ModelFromJson(j.at("model"));
    artifact.training = j.value("training", nlohmann::json::object());
    artifact.config_hash = j.value("config_hash", std::string());
    for (const auto& a : j.at("attribute_bounds")) {
      artifact.attributes.push_back(
          {a.at("name").get<std::string>(), a.at("source").get<std::string>(),
           a.at("kind").get<std::string>() == "numeric" ? AttributeKind::kNumeric
                                                        : AttributeKind::kBinary,
           a.at("lo").get<double>(), a.at("hi").get<double>()});
    }
    if (!artifact.attributes.empty() &&
        artifact.attributes.size() != artifact.model.num_attributes()) {
      throw ParseError("artifact lists bounds for " + std::to_string(artifact.attributes.size()) +
                       " attributes, model has " +
                       std::to_string(artifact.model.num_attributes()));
    }
    return artifact;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model artifact: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("inconsistent model artifact: ") + e.what());
  }
}

void SaveArtifact(const std::string& path, const ModelArtifact& artifact) {
  WriteJsonFile(path, ArtifactToJson(artifact));
}

ModelArtifact LoadArtifact(const std::string& path) {
  return ArtifactFromJson(ReadJsonFile(path));
}

void WriteJsonFile(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace mcda
