#ifndef MCDA_ARTIFACT_H_
#define MCDA_ARTIFACT_H_

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcda/hybrid.h"
#include "mcda/ingest.h"
#include "mcda/train.h"

namespace mcda {

inline constexpr std::string_view kArtifactFormat = "mcda-model/1";

// A trained model plus what is needed to explain it in raw units.
struct ModelArtifact {
  HybridModel model;
  // Encoded attributes with their normalization bounds; one per model
  // attribute. Empty bounds mean the data were already in [0, 1].
  std::vector<EncodedAttribute> attributes;
  nlohmann::json training;  // TrainConfig and provenance
  std::string config_hash;
};

nlohmann::json TrainConfigToJson(const TrainConfig& config);
TrainConfig TrainConfigFromJson(const nlohmann::json& j);

// FNV-1a of the compact dump of `j`.
std::string ConfigHash(const nlohmann::json& j);

nlohmann::json ModelToJson(const HybridModel& model);
HybridModel ModelFromJson(const nlohmann::json& j);

nlohmann::json ArtifactToJson(const ModelArtifact& artifact);
// Throws ParseError for a different format string or malformed content.
ModelArtifact ArtifactFromJson(const nlohmann::json& j);

void SaveArtifact(const std::string& path, const ModelArtifact& artifact);
ModelArtifact LoadArtifact(const std::string& path);

// Writes `j` with two-space indentation and a trailing newline. Throws
// std::runtime_error when the file cannot be written.
void WriteJsonFile(const std::string& path, const nlohmann::json& j);
nlohmann::json ReadJsonFile(const std::string& path);

}  // namespace mcda

#endif  // MCDA_ARTIFACT_H_
