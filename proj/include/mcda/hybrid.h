#ifndef MCDA_HYBRID_H_
#define MCDA_HYBRID_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mcda/additive.h"
#include "mcda/basis.h"
#include "mcda/mlp.h"
#include "mcda/numeric.h"

namespace mcda {

enum class AlphaMode { kTrainable, kFixed };

// The blend coefficient. In trainable mode alpha = sigmoid(raw) so every
// value stays inside [0, 1]; in fixed mode `fixed` is used as-is.
struct AlphaParameter {
  AlphaMode mode = AlphaMode::kTrainable;
  double raw = 0.0;
  double fixed = 0.5;

  static AlphaParameter Trainable(double raw = 0.0) {
    return {AlphaMode::kTrainable, raw, 0.5};
  }
  // Throws ConfigError unless 0 <= value <= 1.
  static AlphaParameter Fixed(double value);

  double value() const;
  // d(alpha)/d(raw); zero in fixed mode.
  double derivative() const;

  friend bool operator==(const AlphaParameter&, const AlphaParameter&) = default;
};

// Architecture and attribute layout of a hybrid model. The network consumes
// the expansion of every attribute; the additive part only `linear_attrs`.
struct ModelSpec {
  std::vector<std::string> attribute_names;
  std::vector<std::size_t> linear_attrs;
  std::vector<int> network_degrees;  // one per attribute
  std::vector<int> linear_degrees;   // one per linear attribute
  std::vector<std::size_t> hidden_widths = {64};
  Activation activation = Activation::kRelu;

  // n attributes named x1..xn, all linear, all with `degree`.
  static ModelSpec Uniform(std::size_t num_attributes, int degree);

  std::size_t num_attributes() const { return attribute_names.size(); }
  // Throws SchemaError/ConfigError on inconsistent fields.
  void Validate() const;
};

// Expanded inputs of one item for the two components.
struct ExpandedItem {
  std::vector<double> linear;
  std::vector<double> network;
};

// Row-aligned expansions of a whole item matrix.
struct ExpandedItems {
  Matrix linear;
  Matrix network;
};

// U(x) = alpha * F(x_lin) + (1 - alpha) * f(Phi(x)).
class HybridModel {
 public:
  HybridModel() = default;
  // Throws SchemaError when the components do not match the ModelSpec.
  HybridModel(ModelSpec spec, AdditiveComponent additive, MlpComponent mlp,
              AlphaParameter alpha);

  // Unit weights, zero polynomial coefficients, Glorot network from `rng`.
  static HybridModel Create(const ModelSpec& spec, AlphaParameter alpha, Rng& rng);

  const ModelSpec& spec() const { return spec_; }
  std::size_t num_attributes() const { return spec_.num_attributes(); }
  const std::vector<std::size_t>& linear_attrs() const { return spec_.linear_attrs; }
  const BasisSpec& network_basis() const { return network_basis_; }
  const AdditiveComponent& additive() const { return additive_; }
  AdditiveComponent& mutable_additive() { return additive_; }
  const MlpComponent& mlp() const { return mlp_; }
  MlpComponent& mutable_mlp() { return mlp_; }
  const AlphaParameter& alpha_parameter() const { return alpha_; }
  AlphaParameter& mutable_alpha_parameter() { return alpha_; }
  double alpha() const { return alpha_.value(); }

  ExpandedItem Expand(std::span<const double> x) const;
  ExpandedItems ExpandAll(const Matrix& items) const;

  // z^{linear}: the additive component on the linear attributes.
  double LinearScore(std::span<const double> x) const;
  // z^{nonlinear}: the network on the full expansion.
  double NonlinearScore(std::span<const double> x) const;
  double GlobalScore(std::span<const double> x) const;
  double PredictProba(std::span<const double> x) const;
  double GlobalScoreExpanded(const ExpandedItem& item) const;

  // Flattened parameters: [alpha raw (trainable mode only)], additive weights,
  // additive coefficients, network parameters.
  std::vector<double> Parameters() const;
  void SetParameters(std::span<const double> values);
  std::size_t num_parameters() const;

  // Projects the parameters back to the feasible set (non-negative weights).
  void Project();

  friend bool operator==(const HybridModel& a, const HybridModel& b) {
    return a.spec_.attribute_names == b.spec_.attribute_names &&
           a.spec_.linear_attrs == b.spec_.linear_attrs &&
           a.network_basis_ == b.network_basis_ && a.additive_ == b.additive_ &&
           a.mlp_ == b.mlp_ && a.alpha_ == b.alpha_;
  }

 private:
  void CheckInput(std::span<const double> x) const;
  std::vector<double> LinearPart(std::span<const double> x) const;

  ModelSpec spec_;
  BasisSpec network_basis_;
  AdditiveComponent additive_;
  MlpComponent mlp_;
  AlphaParameter alpha_;
};

// An all-linear-activation model rewritten as one additive model over the
// network expansion plus a constant: U(x) = component.LinearScore(x) + offset.
struct CollapsedAdditiveModel {
  AdditiveComponent component;
  double offset = 0.0;

  double GlobalScore(std::span<const double> x) const {
    return component.LinearScore(x) + offset;
  }
};

// Throws UsageError when some network activation is not linear.
CollapsedAdditiveModel CollapseToAdditive(const HybridModel& model);

}  // namespace mcda

#endif  // MCDA_HYBRID_H_
