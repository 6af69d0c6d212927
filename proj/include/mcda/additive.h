#ifndef MCDA_ADDITIVE_H_
#define MCDA_ADDITIVE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "mcda/basis.h"

namespace mcda {

// Weighted sum of polynomial marginal value functions,
//   F(x) = sum_j w_j v_j(x_j),  v_j(x) = sum_{d=1..D_j} p_{j,d} x^d.
// Weights are kept non-negative; the sign of an attribute's contribution is
// carried by its polynomial. No constant term, so v_j(0) = 0.
class AdditiveComponent {
 public:
  AdditiveComponent() = default;
  // Unit weights and zero coefficients.
  explicit AdditiveComponent(BasisSpec spec);
  // Throws SchemaError on shape mismatch, ConfigError on a negative weight.
  AdditiveComponent(BasisSpec spec, std::vector<double> weights,
                    std::vector<double> coeffs);

  const BasisSpec& spec() const { return spec_; }
  std::size_t num_attributes() const { return spec_.num_attributes(); }
  const std::vector<double>& weights() const { return weights_; }
  // Flattened p_{j,d}, laid out like the expanded vector.
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::vector<double>& mutable_weights() { return weights_; }
  std::vector<double>& mutable_coeffs() { return coeffs_; }
  // p_{j,1..D_j}.
  std::span<const double> marginal_coeffs(std::size_t j) const;

  // v_j(x). Throws SchemaError for an invalid index.
  double MarginalValue(std::size_t j, double x) const;
  // sum_j w_j v_j(x_j).
  double LinearScore(std::span<const double> x) const;
  // w^T P evaluated from a pre-expanded (or pairwise-difference) vector.
  double LinearScoreExpanded(std::span<const double> expanded) const;
  // w_j / sum(w). Throws DegenerateModelError when the sum is not positive.
  std::vector<double> NormalizedWeights() const;

  // Adds scale * d(LinearScoreExpanded)/d(params) into the two gradient
  // buffers (same layouts as weights() and coeffs()).
  void AccumulateGradient(std::span<const double> expanded, double scale,
                          std::span<double> weight_grad,
                          std::span<double> coeff_grad) const;

  // Clamps negative weights to zero.
  void ProjectWeights();

  friend bool operator==(const AdditiveComponent&, const AdditiveComponent&) = default;

 private:
  BasisSpec spec_;
  std::vector<double> weights_;
  std::vector<double> coeffs_;
};

}  // namespace mcda

#endif  // MCDA_ADDITIVE_H_
