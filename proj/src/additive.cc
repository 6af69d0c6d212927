#include "mcda/additive.h"

#include <string>

#include "mcda/errors.h"

namespace mcda {

AdditiveComponent::AdditiveComponent(BasisSpec spec)
    : spec_(std::move(spec)),
      weights_(spec_.num_attributes(), 1.0),
      coeffs_(spec_.width(), 0.0) {}

AdditiveComponent::AdditiveComponent(BasisSpec spec, std::vector<double> weights,
                                     std::vector<double> coeffs)
    : spec_(std::move(spec)), weights_(std::move(weights)), coeffs_(std::move(coeffs)) {
  if (weights_.size() != spec_.num_attributes()) {
    throw SchemaError("additive component has " + std::to_string(weights_.size()) +
                      " weights for " + std::to_string(spec_.num_attributes()) +
                      " attributes");
  }
  if (coeffs_.size() != spec_.width()) {
    throw SchemaError("additive component has " + std::to_string(coeffs_.size()) +
                      " coefficients, basis width is " +
                      std::to_string(spec_.width()));
  }
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j] < 0.0) {
      throw ConfigError("attribute weight " + std::to_string(j) +
                        " is negative: " + std::to_string(weights_[j]));
    }
  }
}

std::span<const double> AdditiveComponent::marginal_coeffs(std::size_t j) const {
  if (j >= num_attributes()) {
    throw SchemaError("attribute index " + std::to_string(j) + " out of range (" +
                      std::to_string(num_attributes()) + " attributes)");
  }
  return {coeffs_.data() + spec_.offset(j), static_cast<std::size_t>(spec_.degree(j))};
}

double AdditiveComponent::MarginalValue(std::size_t j, double x) const {
  const auto p = marginal_coeffs(j);
  // Horner on x * (p1 + p2 x + ... + pD x^{D-1}).
  double acc = 0.0;
  for (std::size_t d = p.size(); d-- > 0;) acc = acc * x + p[d];
  return acc * x;
}

double AdditiveComponent::LinearScore(std::span<const double> x) const {
  if (x.size() != num_attributes()) {
    throw SchemaError("attribute vector has " + std::to_string(x.size()) +
                      " entries, additive component expects " +
                      std::to_string(num_attributes()));
  }
  double score = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    score += weights_[j] * MarginalValue(j, x[j]);
  }
  return score;
}

double AdditiveComponent::LinearScoreExpanded(std::span<const double> expanded) const {
  if (expanded.size() != spec_.width()) {
    throw SchemaError("expanded vector has " + std::to_string(expanded.size()) +
                      " entries, basis width is " + std::to_string(spec_.width()));
  }
  double score = 0.0;
  for (std::size_t j = 0; j < num_attributes(); ++j) {
    const std::size_t begin = spec_.offset(j);
    const std::size_t end = spec_.offset(j + 1);
    double marginal = 0.0;
    for (std::size_t d = begin; d < end; ++d) marginal += coeffs_[d] * expanded[d];
    score += weights_[j] * marginal;
  }
  return score;
}

std::vector<double> AdditiveComponent::NormalizedWeights() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  if (!(total > 0.0)) {
    throw DegenerateModelError("attribute weights sum to " + std::to_string(total) +
                               "; cannot normalize");
  }
  std::vector<double> out(weights_.size());
  for (std::size_t j = 0; j < weights_.size(); ++j) out[j] = weights_[j] / total;
  return out;
}

void AdditiveComponent::AccumulateGradient(std::span<const double> expanded,
                                           double scale,
                                           std::span<double> weight_grad,
                                           std::span<double> coeff_grad) const {
  for (std::size_t j = 0; j < num_attributes(); ++j) {
    const std::size_t begin = spec_.offset(j);
    const std::size_t end = spec_.offset(j + 1);
    double marginal = 0.0;
    const double wj = scale * weights_[j];
    for (std::size_t d = begin; d < end; ++d) {
      marginal += coeffs_[d] * expanded[d];
      coeff_grad[d] += wj * expanded[d];
    }
    weight_grad[j] += scale * marginal;
  }
}

void AdditiveComponent::ProjectWeights() {
  for (double& w : weights_) {
    if (w < 0.0) w = 0.0;
  }
}

}  // namespace mcda
