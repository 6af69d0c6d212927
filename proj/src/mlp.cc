#include "mcda/mlp.h"

#include <atomic>
#include <cmath>
#include <string>

#include "mcda/errors.h"

namespace mcda {

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kRelu:
      return "relu";
    case Activation::kLinear:
      return "linear";
    case Activation::kSigmoid:
      return "sigmoid";
  }
  return "unknown";
}

Activation ParseActivation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "linear") return Activation::kLinear;
  if (name == "sigmoid") return Activation::kSigmoid;
  throw ConfigError("unknown activation '" + std::string(name) +
                    "' (expected relu, linear or sigmoid)");
}

namespace {

double Activate(Activation activation, double x) {
  switch (activation) {
    case Activation::kRelu:
      return Relu(x);
    case Activation::kLinear:
      return x;
    case Activation::kSigmoid:
      return Sigmoid(x);
  }
  return x;
}

// Derivative from the pre-activation and the activation value. ReLU'(0) = 0.
double ActivationDerivative(Activation activation, double pre, double out) {
  switch (activation) {
    case Activation::kRelu:
      return pre > 0.0 ? 1.0 : 0.0;
    case Activation::kLinear:
      return 1.0;
    case Activation::kSigmoid:
      return out * (1.0 - out);
  }
  return 1.0;
}

// Process-wide counter so that copies and distinct nets never share versions.
std::uint64_t NextVersion() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

}  // namespace

double AffineMap::Evaluate(std::span<const double> x) const {
  return Dot(coefficients, x) + offset;
}

MlpGradient MlpGradient::ZerosLike(const MlpComponent& net) {
  MlpGradient grad;
  for (const DenseLayer& layer : net.layers()) {
    grad.weights.emplace_back(layer.inputs(), layer.outputs());
    grad.bias.emplace_back(layer.outputs(), 0.0);
  }
  grad.head.assign(net.head().size(), 0.0);
  return grad;
}

void MlpGradient::SetZero() {
  for (Matrix& m : weights) std::fill(m.mutable_data().begin(), m.mutable_data().end(), 0.0);
  for (auto& b : bias) std::fill(b.begin(), b.end(), 0.0);
  std::fill(head.begin(), head.end(), 0.0);
}

MlpComponent::MlpComponent(std::size_t input_width, std::vector<DenseLayer> layers,
                           std::vector<double> head)
    : input_width_(input_width),
      layers_(std::move(layers)),
      head_(std::move(head)),
      version_(NextVersion()) {
  Validate();
}

void MlpComponent::Validate() const {
  std::size_t width = input_width_;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    if (layer.inputs() != width) {
      throw SchemaError("layer " + std::to_string(l) + " expects " +
                        std::to_string(layer.inputs()) + " inputs, previous width is " +
                        std::to_string(width));
    }
    if (layer.bias.size() != layer.outputs()) {
      throw SchemaError("layer " + std::to_string(l) + " has " +
                        std::to_string(layer.bias.size()) + " biases for " +
                        std::to_string(layer.outputs()) + " units");
    }
    width = layer.outputs();
  }
  if (head_.size() != width) {
    throw SchemaError("head has " + std::to_string(head_.size()) +
                      " weights, last layer width is " + std::to_string(width));
  }
}

MlpComponent MlpComponent::Create(std::size_t input_width,
                                  const std::vector<std::size_t>& hidden_widths,
                                  Activation activation, Rng& rng) {
  std::vector<DenseLayer> layers;
  std::size_t fan_in = input_width;
  for (std::size_t width : hidden_widths) {
    if (width == 0) throw ConfigError("hidden layer width must be positive");
    DenseLayer layer;
    layer.weights = Matrix(fan_in, width);
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + width));
    for (double& w : layer.weights.mutable_data()) w = rng.Uniform(-limit, limit);
    layer.bias.assign(width, 0.0);
    layer.activation = activation;
    layers.push_back(std::move(layer));
    fan_in = width;
  }
  std::vector<double> head(fan_in);
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + 1));
  for (double& h : head) h = rng.Uniform(-limit, limit);
  return MlpComponent(input_width, std::move(layers), std::move(head));
}

std::vector<DenseLayer>& MlpComponent::mutable_layers() {
  version_ = NextVersion();
  return layers_;
}

std::vector<double>& MlpComponent::mutable_head() {
  version_ = NextVersion();
  return head_;
}

bool MlpComponent::AllLinear() const {
  for (const DenseLayer& layer : layers_) {
    if (layer.activation != Activation::kLinear) return false;
  }
  return true;
}

std::size_t MlpComponent::num_parameters() const {
  std::size_t count = head_.size();
  for (const DenseLayer& layer : layers_) {
    count += layer.weights.data().size() + layer.bias.size();
  }
  return count;
}

double MlpComponent::Forward(std::span<const double> input, MlpCache* cache) const {
  if (input.size() != input_width_) {
    throw SchemaError("network input has " + std::to_string(input.size()) +
                      " entries, expected " + std::to_string(input_width_));
  }
  std::vector<double> local_current;
  std::vector<std::vector<double>>* activations = nullptr;
  if (cache != nullptr) {
    cache->owner = this;
    cache->version = version_;
    cache->activations.resize(layers_.size() + 1);
    cache->pre_activations.resize(layers_.size());
    cache->activations[0].assign(input.begin(), input.end());
    activations = &cache->activations;
  } else {
    local_current.assign(input.begin(), input.end());
  }

  std::vector<double> local_next;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    const std::vector<double>& in = activations ? (*activations)[l] : local_current;
    std::vector<double>& pre = cache ? cache->pre_activations[l] : local_next;
    pre.assign(layer.bias.begin(), layer.bias.end());
    const std::size_t outputs = layer.outputs();
    const double* w = layer.weights.data().data();
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double zi = in[i];
      if (zi == 0.0) continue;
      const double* w_row = w + i * outputs;
      for (std::size_t o = 0; o < outputs; ++o) pre[o] += w_row[o] * zi;
    }
    if (activations) {
      std::vector<double>& out = (*activations)[l + 1];
      out.resize(outputs);
      for (std::size_t o = 0; o < outputs; ++o) out[o] = Activate(layer.activation, pre[o]);
    } else {
      for (std::size_t o = 0; o < outputs; ++o) pre[o] = Activate(layer.activation, pre[o]);
      local_current.swap(local_next);
    }
  }
  const std::vector<double>& last = activations ? activations->back() : local_current;
  double output = 0.0;
  for (std::size_t u = 0; u < head_.size(); ++u) output += head_[u] * last[u];
  return output;
}

MlpGradient MlpComponent::Backward(const MlpCache& cache, double upstream) const {
  MlpGradient grad = MlpGradient::ZerosLike(*this);
  AccumulateBackward(cache, upstream, grad);
  return grad;
}

void MlpComponent::AccumulateBackward(const MlpCache& cache, double upstream,
                                      MlpGradient& grad) const {
  if (cache.owner != this || cache.version != version_ ||
      cache.activations.size() != layers_.size() + 1) {
    throw UsageError("forward cache does not belong to the current network state");
  }
  if (upstream == 0.0) return;
  const std::vector<double>& last = cache.activations.back();
  // delta holds d(output)/d(z_{l+1}) scaled by upstream.
  std::vector<double> delta(head_.size());
  for (std::size_t u = 0; u < head_.size(); ++u) {
    grad.head[u] += upstream * last[u];
    delta[u] = upstream * head_[u];
  }
  std::vector<double> delta_in;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const DenseLayer& layer = layers_[l];
    const std::vector<double>& pre = cache.pre_activations[l];
    const std::vector<double>& out = cache.activations[l + 1];
    const std::vector<double>& in = cache.activations[l];
    const std::size_t outputs = layer.outputs();
    for (std::size_t o = 0; o < outputs; ++o) {
      delta[o] *= ActivationDerivative(layer.activation, pre[o], out[o]);
      grad.bias[l][o] += delta[o];
    }
    const double* w = layer.weights.data().data();
    double* gw = grad.weights[l].mutable_data().data();
    const bool need_input_delta = l > 0;
    if (need_input_delta) delta_in.assign(in.size(), 0.0);
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double zi = in[i];
      const double* w_row = w + i * outputs;
      double* gw_row = gw + i * outputs;
      double acc = 0.0;
      for (std::size_t o = 0; o < outputs; ++o) {
        gw_row[o] += zi * delta[o];
        acc += w_row[o] * delta[o];
      }
      if (need_input_delta) delta_in[i] = acc;
    }
    if (need_input_delta) delta.swap(delta_in);
  }
}

void MlpComponent::AppendParameters(std::vector<double>& out) const {
  for (const DenseLayer& layer : layers_) {
    out.insert(out.end(), layer.weights.data().begin(), layer.weights.data().end());
    out.insert(out.end(), layer.bias.begin(), layer.bias.end());
  }
  out.insert(out.end(), head_.begin(), head_.end());
}

std::size_t MlpComponent::AssignParameters(std::span<const double> values) {
  if (values.size() < num_parameters()) {
    throw SchemaError("parameter vector too short for network");
  }
  std::size_t pos = 0;
  for (DenseLayer& layer : mutable_layers()) {
    auto& w = layer.weights.mutable_data();
    std::copy_n(values.begin() + pos, w.size(), w.begin());
    pos += w.size();
    std::copy_n(values.begin() + pos, layer.bias.size(), layer.bias.begin());
    pos += layer.bias.size();
  }
  std::copy_n(values.begin() + pos, head_.size(), head_.begin());
  pos += head_.size();
  return pos;
}

void MlpComponent::AppendGradient(const MlpGradient& grad, std::vector<double>& out) {
  for (std::size_t l = 0; l < grad.weights.size(); ++l) {
    out.insert(out.end(), grad.weights[l].data().begin(), grad.weights[l].data().end());
    out.insert(out.end(), grad.bias[l].begin(), grad.bias[l].end());
  }
  out.insert(out.end(), grad.head.begin(), grad.head.end());
}

AffineMap MlpComponent::CollapseLinear() const {
  if (!AllLinear()) {
    throw UsageError("only networks with all-linear activations collapse to an affine map");
  }
  // Pull the head back through each layer: v_l = W_l v_{l+1}, offset += b_l . v_{l+1}.
  std::vector<double> v = head_;
  double offset = 0.0;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const DenseLayer& layer = layers_[l];
    offset += Dot(layer.bias, v);
    std::vector<double> pulled(layer.inputs(), 0.0);
    for (std::size_t i = 0; i < layer.inputs(); ++i) pulled[i] = Dot(layer.weights.row(i), v);
    v.swap(pulled);
  }
  return AffineMap{std::move(v), offset};
}

void MlpComponent::ScaleHead(double factor) {
  for (double& h : mutable_head()) h *= factor;
}

}  // namespace mcda
