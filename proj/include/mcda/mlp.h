#ifndef MCDA_MLP_H_
#define MCDA_MLP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcda/numeric.h"

namespace mcda {

enum class Activation { kRelu, kLinear, kSigmoid };

std::string_view ActivationName(Activation activation);
// Accepts "relu", "linear", "sigmoid". Throws ConfigError otherwise.
Activation ParseActivation(std::string_view name);

// z_out = a(W^T z_in + b), W stored as (inputs x outputs).
struct DenseLayer {
  Matrix weights;
  std::vector<double> bias;
  Activation activation = Activation::kRelu;

  std::size_t inputs() const { return weights.rows(); }
  std::size_t outputs() const { return weights.cols(); }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

class MlpComponent;

// Layer inputs and pre-activations recorded by a forward pass.
struct MlpCache {
  const MlpComponent* owner = nullptr;
  std::uint64_t version = 0;
  // activations[0] is the network input; activations[l + 1] the output of
  // layer l.
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> pre_activations;
};

// Partial derivatives mirroring MlpComponent's parameters.
struct MlpGradient {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> bias;
  std::vector<double> head;

  static MlpGradient ZerosLike(const MlpComponent& net);
  void SetZero();
};

// z = h^T c where c = x^T M + m: the affine map an all-linear network reduces to.
struct AffineMap {
  std::vector<double> coefficients;
  double offset = 0.0;

  double Evaluate(std::span<const double> x) const;
};

// Fully connected perceptron with a bias-free linear read-out:
//   z_1 = x,  z_{l+1} = a_l(W_l^T z_l + b_l),  output = h^T z_{L+1}.
class MlpComponent {
 public:
  MlpComponent() = default;
  // Throws SchemaError unless layer shapes chain and the head matches the last
  // layer (or the input when there are no layers).
  MlpComponent(std::size_t input_width, std::vector<DenseLayer> layers,
               std::vector<double> head);

  // Glorot-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases. The
  // head is initialised the same way with fan_out = 1.
  static MlpComponent Create(std::size_t input_width,
                             const std::vector<std::size_t>& hidden_widths,
                             Activation activation, Rng& rng);

  std::size_t input_width() const { return input_width_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  const std::vector<double>& head() const { return head_; }
  // Mutable access invalidates outstanding caches.
  std::vector<DenseLayer>& mutable_layers();
  std::vector<double>& mutable_head();
  std::uint64_t version() const { return version_; }

  bool AllLinear() const;
  std::size_t num_parameters() const;

  // Output z^{nonlinear}; fills `cache` when given.
  double Forward(std::span<const double> input, MlpCache* cache = nullptr) const;
  // Gradient of upstream * output with respect to every parameter.
  MlpGradient Backward(const MlpCache& cache, double upstream) const;
  // Adds the same quantity into `grad`.
  void AccumulateBackward(const MlpCache& cache, double upstream,
                          MlpGradient& grad) const;

  // Parameters in the order: per layer (weights row-major, bias), then head.
  void AppendParameters(std::vector<double>& out) const;
  // Inverse of AppendParameters; returns the number of values consumed.
  std::size_t AssignParameters(std::span<const double> values);
  static void AppendGradient(const MlpGradient& grad, std::vector<double>& out);

  // Collapses an all-linear network into a single affine map of its input.
  // Throws UsageError if some activation is not linear.
  AffineMap CollapseLinear() const;

  // Multiplies the head by `factor` (scales the output exactly).
  void ScaleHead(double factor);

  friend bool operator==(const MlpComponent& a, const MlpComponent& b) {
    return a.input_width_ == b.input_width_ && a.layers_ == b.layers_ &&
           a.head_ == b.head_;
  }

 private:
  void Validate() const;

  std::size_t input_width_ = 0;
  std::vector<DenseLayer> layers_;
  std::vector<double> head_;
  std::uint64_t version_ = 0;
};

}  // namespace mcda

#endif  // MCDA_MLP_H_
