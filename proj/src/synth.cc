#include "mcda/synth.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcda/errors.h"
#include "mcda/ranking.h"

namespace mcda {

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kLinear:
      return "linear";
    case Family::kPolynomial3:
      return "polynomial-3";
    case Family::kPolynomial15:
      return "polynomial-15";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  if (name == "linear") return Family::kLinear;
  if (name == "polynomial-3" || name == "poly3") return Family::kPolynomial3;
  if (name == "polynomial-15" || name == "poly15") return Family::kPolynomial15;
  throw ConfigError("unknown dataset family '" + std::string(name) +
                    "' (expected linear, polynomial-3 or polynomial-15)");
}

namespace {

std::string_view KindName(MarginalKind kind) {
  switch (kind) {
    case MarginalKind::kPolynomial:
      return "polynomial";
    case MarginalKind::kSigmoid:
      return "sigmoid";
    case MarginalKind::kExponential:
      return "exponential";
  }
  return "unknown";
}

MarginalKind ParseKind(std::string_view name) {
  if (name == "polynomial") return MarginalKind::kPolynomial;
  if (name == "sigmoid") return MarginalKind::kSigmoid;
  if (name == "exponential") return MarginalKind::kExponential;
  throw ParseError("unknown marginal kind '" + std::string(name) + "'");
}

MarginalFunction Polynomial(std::vector<double> coeffs) {
  return {MarginalKind::kPolynomial, std::move(coeffs), 1.0, 0.0};
}

// Every subset of {0..n-1} with at least two members, by size then
// lexicographically.
std::vector<std::vector<std::size_t>> InteractionSubsets(std::size_t n, std::size_t max_order) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t order = 2; order <= std::min(n, max_order); ++order) {
    std::vector<std::size_t> idx(order);
    for (std::size_t i = 0; i < order; ++i) idx[i] = i;
    while (true) {
      out.push_back(idx);
      std::size_t pos = order;
      while (pos > 0 && idx[pos - 1] == n - order + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < order; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

}  // namespace

double MarginalFunction::operator()(double x) const {
  double raw = 0.0;
  switch (kind) {
    case MarginalKind::kPolynomial:
      for (std::size_t d = params.size(); d > 0; --d) raw = (raw + params[d - 1]) * x;
      break;
    case MarginalKind::kSigmoid:
      raw = Sigmoid(params.at(0) * (x - params.at(1)));
      break;
    case MarginalKind::kExponential:
      raw = std::exp(params.at(0) * x);
      break;
  }
  return scale * raw + shift;
}

void MarginalFunction::RescaleToUnitRange() {
  scale = 1.0;
  shift = 0.0;
  double lo = (*this)(0.0);
  double hi = lo;
  for (int g = 1; g <= 1000; ++g) {
    const double v = (*this)(g / 1000.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi > lo) {
    scale = 1.0 / (hi - lo);
    shift = -lo * scale;
  }
}

double GroundTruth::Score(std::span<const double> x) const {
  if (x.size() != marginals.size()) {
    throw SchemaError("truth expects " + std::to_string(marginals.size()) +
                      " attributes, got " + std::to_string(x.size()));
  }
  double total = 0.0;
  for (std::size_t j = 0; j < marginals.size(); ++j) total += marginals[j](x[j]);
  for (const Interaction& term : interactions) {
    double product = term.coefficient;
    for (std::size_t a : term.attrs) product *= x[a];
    total += product;
  }
  return total;
}

std::size_t GroundTruth::CountInteractions(std::size_t order) const {
  return static_cast<std::size_t>(
      std::count_if(interactions.begin(), interactions.end(),
                    [order](const Interaction& t) { return t.attrs.size() == order; }));
}

nlohmann::json GroundTruth::ToJson() const {
  nlohmann::json j;
  j["noise_scale"] = noise_scale;
  j["marginals"] = nlohmann::json::array();
  for (const MarginalFunction& m : marginals) {
    j["marginals"].push_back({{"kind", KindName(m.kind)},
                              {"params", m.params},
                              {"scale", m.scale},
                              {"shift", m.shift}});
  }
  j["interactions"] = nlohmann::json::array();
  for (const Interaction& t : interactions) {
    j["interactions"].push_back({{"attrs", t.attrs}, {"coefficient", t.coefficient}});
  }
  return j;
}

GroundTruth GroundTruth::FromJson(const nlohmann::json& j) {
  try {
    GroundTruth truth;
    truth.noise_scale = j.at("noise_scale").get<double>();
    for (const auto& m : j.at("marginals")) {
      truth.marginals.push_back({ParseKind(m.at("kind").get<std::string>()),
                                 m.at("params").get<std::vector<double>>(),
                                 m.at("scale").get<double>(), m.at("shift").get<double>()});
    }
    for (const auto& t : j.at("interactions")) {
      Interaction term{t.at("attrs").get<std::vector<std::size_t>>(),
                       t.at("coefficient").get<double>()};
      for (std::size_t a : term.attrs) {
        if (a >= truth.marginals.size()) throw ParseError("interaction refers to attribute " +
                                                          std::to_string(a));
      }
      truth.interactions.push_back(std::move(term));
    }
    return truth;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed ground-truth document: ") + e.what());
  }
}

void SyntheticSpec::Validate() const {
  if (num_alternatives < 2) throw ConfigError("need at least two alternatives");
  if (num_attributes < 1) throw ConfigError("need at least one attribute");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw ConfigError("noise scale must be a non-negative number");
  }
  if (family == Family::kPolynomial15 && num_attributes > 15) {
    throw ConfigError("polynomial-15 supports at most 15 attributes (got " +
                      std::to_string(num_attributes) + "); the interaction count grows as 2^n");
  }
}

GroundTruth GenerateTruth(Family family, std::size_t num_attributes, Rng& rng) {
  GroundTruth truth;
  switch (family) {
    case Family::kLinear:
      for (std::size_t j = 0; j < num_attributes; ++j) truth.marginals.push_back(Polynomial({1.0}));
      break;
    case Family::kPolynomial3:
    case Family::kPolynomial15: {
      const int degree = family == Family::kPolynomial3 ? 3 : 15;
      for (std::size_t j = 0; j < num_attributes; ++j) {
        std::vector<double> coeffs(degree);
        for (double& c : coeffs) c = rng.Uniform(-1.0, 1.0);
        truth.marginals.push_back(Polynomial(std::move(coeffs)));
      }
      const std::size_t max_order = family == Family::kPolynomial3 ? 2 : num_attributes;
      for (auto& subset : InteractionSubsets(num_attributes, max_order)) {
        truth.interactions.push_back({std::move(subset), rng.Uniform(-1.0, 1.0)});
      }
      break;
    }
  }
  return truth;
}

GroundTruth SyntheticModel(int kind) {
  GroundTruth truth;
  truth.noise_scale = 0.0;
  switch (kind) {
    case 1:
      truth.marginals = {Polynomial({1.0}), Polynomial({-1.0}), Polynomial({0.5})};
      break;
    case 2:
      truth.marginals = {Polynomial({1.5, -4.5, 3.0}), Polynomial({0.0, 0.0, 1.0}),
                         Polynomial({0.8, -2.0, 1.0})};
      truth.interactions = {{{0, 1}, 0.5}, {{0, 2}, -0.5}, {{1, 2}, 0.5}};
      break;
    case 3:
    case 4: {
      std::vector<double> poly15(15, 0.0);
      poly15[0] = 1.0;
      poly15[1] = -2.0;
      poly15[14] = 1.0;
      truth.marginals = {Polynomial(std::move(poly15)),
                         {MarginalKind::kSigmoid, {10.0, 0.5}, 1.0, 0.0},
                         {MarginalKind::kExponential, {2.0}, 1.0, 0.0}};
      if (kind == 4) {
        truth.interactions = {
            {{0, 1}, 0.5}, {{0, 2}, -0.5}, {{1, 2}, 0.5}, {{0, 1, 2}, 1.0}};
      }
      break;
    }
    default:
      throw ConfigError("synthetic model kind must be 1, 2, 3 or 4, got " +
                        std::to_string(kind));
  }
  for (MarginalFunction& m : truth.marginals) m.RescaleToUnitRange();
  return truth;
}

Matrix GenAlternatives(std::size_t num_alternatives, std::size_t num_attributes, Rng& rng) {
  Matrix items(num_alternatives, num_attributes);
  for (double& v : items.mutable_data()) v = rng.Uniform01();
  return items;
}

std::vector<double> ScoreAlternatives(const GroundTruth& truth, const Matrix& items,
                                      double noise_scale, Rng& rng) {
  std::vector<double> scores(items.rows());
  for (std::size_t r = 0; r < items.rows(); ++r) {
    scores[r] = truth.Score(items.row(r));
    if (noise_scale > 0.0) scores[r] += noise_scale * rng.StandardNormal();
  }
  return scores;
}

SyntheticDataset GenerateDataset(const SyntheticSpec& spec) {
  spec.Validate();
  Rng truth_rng(DeriveSeed(spec.seed, {1}));
  GroundTruth truth = GenerateTruth(spec.family, spec.num_attributes, truth_rng);
  truth.noise_scale = spec.noise_scale;
  return GenerateDataset(spec, truth);
}

SyntheticDataset GenerateDataset(const SyntheticSpec& spec, const GroundTruth& truth) {
  spec.Validate();
  if (truth.num_attributes() != spec.num_attributes) {
    throw ConfigError("truth has " + std::to_string(truth.num_attributes()) +
                      " attributes, spec asks for " + std::to_string(spec.num_attributes));
  }
  Rng item_rng(DeriveSeed(spec.seed, {2}));
  Rng noise_rng(DeriveSeed(spec.seed, {3}));
  SyntheticDataset data;
  data.items = GenAlternatives(spec.num_alternatives, spec.num_attributes, item_rng);
  data.truth = truth;
  data.truth.noise_scale = spec.noise_scale;
  data.scores = ScoreAlternatives(data.truth, data.items, spec.noise_scale, noise_rng);
  return data;
}

TrainingSet LabeledPairs(const SyntheticDataset& data) {
  return PairTrainingSet(data.items, data.scores);
}

}  // namespace mcda
