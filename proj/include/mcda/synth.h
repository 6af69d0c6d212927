#ifndef MCDA_SYNTH_H_
#define MCDA_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcda/numeric.h"
#include "mcda/train.h"

namespace mcda {

enum class Family { kLinear, kPolynomial3, kPolynomial15 };

std::string_view FamilyName(Family family);
// linear, polynomial-3, polynomial-15.
Family ParseFamily(std::string_view name);

enum class MarginalKind { kPolynomial, kSigmoid, kExponential };

// One true marginal: scale * g(x) + shift, where g is
//   kPolynomial:  sum_d params[d-1] x^d
//   kSigmoid:     1 / (1 + exp(-params[0] (x - params[1])))
//   kExponential: exp(params[0] x)
struct MarginalFunction {
  MarginalKind kind = MarginalKind::kPolynomial;
  std::vector<double> params;
  double scale = 1.0;
  double shift = 0.0;

  double operator()(double x) const;
  // Sets scale and shift so that the function spans [0, 1] on a 1001-point
  // grid over [0, 1]. Constant functions are left unchanged.
  void RescaleToUnitRange();
};

// coefficient * prod_{j in attrs} x_j
struct Interaction {
  std::vector<std::size_t> attrs;
  double coefficient = 0.0;
};

struct GroundTruth {
  std::vector<MarginalFunction> marginals;
  std::vector<Interaction> interactions;
  double noise_scale = 1.0;

  std::size_t num_attributes() const { return marginals.size(); }
  // Noise-free score.
  double Score(std::span<const double> x) const;
  std::size_t CountInteractions(std::size_t order) const;

  nlohmann::json ToJson() const;
  static GroundTruth FromJson(const nlohmann::json& j);
};

struct SyntheticSpec {
  Family family = Family::kLinear;
  std::size_t num_alternatives = 250;
  std::size_t num_attributes = 3;
  std::uint64_t seed = 0;
  double noise_scale = 1.0;

  // Throws ConfigError for N < 2, n < 1, negative noise, or n > 15 with
  // polynomial-15 (2^n interaction subsets).
  void Validate() const;
};

// Random truth of a family; coefficients uniform in [-1, 1].
GroundTruth GenerateTruth(Family family, std::size_t num_attributes, Rng& rng);

// The four fixed three-attribute truths:
//   1: linear marginals, no interactions;
//   2: cubic marginals plus the three pairwise interactions;
//   3: degree-15 polynomial, sigmoid and exponential marginals;
//   4: model 3 plus pairwise and triple interactions.
// Marginals are rescaled to [0, 1]. Throws ConfigError for other kinds.
GroundTruth SyntheticModel(int kind);

// N x n i.i.d. uniform [0, 1) draws.
Matrix GenAlternatives(std::size_t num_alternatives, std::size_t num_attributes, Rng& rng);

// Score of every row plus noise_scale * N(0, 1), one draw per row.
std::vector<double> ScoreAlternatives(const GroundTruth& truth, const Matrix& items,
                                      double noise_scale, Rng& rng);

struct SyntheticDataset {
  Matrix items;
  std::vector<double> scores;
  GroundTruth truth;
};

// Truth, items and noise come from independent streams of spec.seed, so two
// families generated with one seed share their attribute vectors.
SyntheticDataset GenerateDataset(const SyntheticSpec& spec);
// Same items and noise stream, fixed truth.
SyntheticDataset GenerateDataset(const SyntheticSpec& spec, const GroundTruth& truth);

// All C(N, 2) pairs of the dataset with labels from the stored scores.
TrainingSet LabeledPairs(const SyntheticDataset& data);

}  // namespace mcda

#endif  // MCDA_SYNTH_H_
