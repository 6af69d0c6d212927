#include "mcda/hybrid.h"

#include <algorithm>
#include <set>
#include <string>

#include "mcda/errors.h"

namespace mcda {

AlphaParameter AlphaParameter::Fixed(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError("fixed alpha must lie in [0, 1], got " + std::to_string(value));
  }
  return {AlphaMode::kFixed, 0.0, value};
}

double AlphaParameter::value() const {
  return mode == AlphaMode::kTrainable ? Sigmoid(raw) : fixed;
}

double AlphaParameter::derivative() const {
  if (mode != AlphaMode::kTrainable) return 0.0;
  const double a = Sigmoid(raw);
  return a * (1.0 - a);
}

ModelSpec ModelSpec::Uniform(std::size_t num_attributes, int degree) {
  ModelSpec spec;
  for (std::size_t j = 0; j < num_attributes; ++j) {
    spec.attribute_names.push_back("x" + std::to_string(j + 1));
    spec.linear_attrs.push_back(j);
  }
  spec.network_degrees.assign(num_attributes, degree);
  spec.linear_degrees.assign(num_attributes, degree);
  return spec;
}

void ModelSpec::Validate() const {
  if (attribute_names.empty()) throw SchemaError("model has no attributes");
  if (network_degrees.size() != attribute_names.size()) {
    throw SchemaError("network degrees (" + std::to_string(network_degrees.size()) +
                      ") do not match attributes (" +
                      std::to_string(attribute_names.size()) + ")");
  }
  if (linear_attrs.empty()) {
    throw SchemaError("the additive component needs at least one attribute");
  }
  if (linear_degrees.size() != linear_attrs.size()) {
    throw SchemaError("linear degrees (" + std::to_string(linear_degrees.size()) +
                      ") do not match linear attributes (" +
                      std::to_string(linear_attrs.size()) + ")");
  }
  std::set<std::size_t> seen;
  for (std::size_t j : linear_attrs) {
    if (j >= attribute_names.size()) {
      throw SchemaError("linear attribute index " + std::to_string(j) + " out of range");
    }
    if (!seen.insert(j).second) {
      throw SchemaError("linear attribute index " + std::to_string(j) + " repeated");
    }
  }
  for (int d : network_degrees) {
    if (d < 1) throw ConfigError("network degree must be >= 1");
  }
  for (int d : linear_degrees) {
    if (d < 1) throw ConfigError("linear degree must be >= 1");
  }
}

HybridModel::HybridModel(ModelSpec spec, AdditiveComponent additive, MlpComponent mlp,
                         AlphaParameter alpha)
    : spec_(std::move(spec)),
      additive_(std::move(additive)),
      mlp_(std::move(mlp)),
      alpha_(alpha) {
  spec_.Validate();
  network_basis_ = BasisSpec(spec_.network_degrees);
  if (additive_.spec() != BasisSpec(spec_.linear_degrees)) {
    throw SchemaError("additive component basis does not match the linear degrees");
  }
  if (mlp_.input_width() != network_basis_.width()) {
    throw SchemaError("network input width " + std::to_string(mlp_.input_width()) +
                      " does not match expansion width " +
                      std::to_string(network_basis_.width()));
  }
  if (alpha_.mode == AlphaMode::kFixed && !(alpha_.fixed >= 0.0 && alpha_.fixed <= 1.0)) {
    throw ConfigError("fixed alpha must lie in [0, 1]");
  }
}

HybridModel HybridModel::Create(const ModelSpec& spec, AlphaParameter alpha, Rng& rng) {
  spec.Validate();
  const BasisSpec network_basis(spec.network_degrees);
  MlpComponent mlp =
      MlpComponent::Create(network_basis.width(), spec.hidden_widths, spec.activation, rng);
  return HybridModel(spec, AdditiveComponent(BasisSpec(spec.linear_degrees)), std::move(mlp),
                     alpha);
}

void HybridModel::CheckInput(std::span<const double> x) const {
  if (x.size() != num_attributes()) {
    throw SchemaError("attribute vector has " + std::to_string(x.size()) +
                      " entries, model expects " + std::to_string(num_attributes()));
  }
}

std::vector<double> HybridModel::LinearPart(std::span<const double> x) const {
  std::vector<double> part(spec_.linear_attrs.size());
  for (std::size_t m = 0; m < part.size(); ++m) part[m] = x[spec_.linear_attrs[m]];
  return part;
}

ExpandedItem HybridModel::Expand(std::span<const double> x) const {
  CheckInput(x);
  return {ExpandVector(LinearPart(x), additive_.spec()), ExpandVector(x, network_basis_)};
}

ExpandedItems HybridModel::ExpandAll(const Matrix& items) const {
  if (items.cols() != num_attributes()) {
    throw SchemaError("item matrix has " + std::to_string(items.cols()) +
                      " columns, model expects " + std::to_string(num_attributes()));
  }
  ExpandedItems out{Matrix(items.rows(), additive_.spec().width()),
                    Matrix(items.rows(), network_basis_.width())};
  std::vector<double> part(spec_.linear_attrs.size());
  for (std::size_t r = 0; r < items.rows(); ++r) {
    const auto x = items.row(r);
    for (std::size_t m = 0; m < part.size(); ++m) part[m] = x[spec_.linear_attrs[m]];
    ExpandVectorInto(part, additive_.spec(), out.linear.mutable_row(r));
    ExpandVectorInto(x, network_basis_, out.network.mutable_row(r));
  }
  return out;
}

double HybridModel::LinearScore(std::span<const double> x) const {
  CheckInput(x);
  return additive_.LinearScore(LinearPart(x));
}

double HybridModel::NonlinearScore(std::span<const double> x) const {
  CheckInput(x);
  return mlp_.Forward(ExpandVector(x, network_basis_));
}

double HybridModel::GlobalScore(std::span<const double> x) const {
  const double a = alpha();
  // Skip the component with zero weight so endpoints reproduce it exactly.
  if (a == 1.0) return LinearScore(x);
  if (a == 0.0) return NonlinearScore(x);
  return a * LinearScore(x) + (1.0 - a) * NonlinearScore(x);
}

double HybridModel::PredictProba(std::span<const double> x) const {
  return Sigmoid(GlobalScore(x));
}

double HybridModel::GlobalScoreExpanded(const ExpandedItem& item) const {
  const double a = alpha();
  if (a == 1.0) return additive_.LinearScoreExpanded(item.linear);
  if (a == 0.0) return mlp_.Forward(item.network);
  return a * additive_.LinearScoreExpanded(item.linear) +
         (1.0 - a) * mlp_.Forward(item.network);
}

std::vector<double> HybridModel::Parameters() const {
  std::vector<double> out;
  out.reserve(num_parameters());
  if (alpha_.mode == AlphaMode::kTrainable) out.push_back(alpha_.raw);
  out.insert(out.end(), additive_.weights().begin(), additive_.weights().end());
  out.insert(out.end(), additive_.coeffs().begin(), additive_.coeffs().end());
  mlp_.AppendParameters(out);
  return out;
}

void HybridModel::SetParameters(std::span<const double> values) {
  if (values.size() != num_parameters()) {
    throw SchemaError("parameter vector has " + std::to_string(values.size()) +
                      " entries, model has " + std::to_string(num_parameters()));
  }
  std::size_t pos = 0;
  if (alpha_.mode == AlphaMode::kTrainable) alpha_.raw = values[pos++];
  auto& w = additive_.mutable_weights();
  std::copy_n(values.begin() + pos, w.size(), w.begin());
  pos += w.size();
  auto& p = additive_.mutable_coeffs();
  std::copy_n(values.begin() + pos, p.size(), p.begin());
  pos += p.size();
  mlp_.AssignParameters(values.subspan(pos));
}

std::size_t HybridModel::num_parameters() const {
  return (alpha_.mode == AlphaMode::kTrainable ? 1 : 0) + additive_.weights().size() +
         additive_.coeffs().size() + mlp_.num_parameters();
}

void HybridModel::Project() { additive_.ProjectWeights(); }

CollapsedAdditiveModel CollapseToAdditive(const HybridModel& model) {
  const AffineMap affine = model.mlp().CollapseLinear();
  const double a = model.alpha();
  const BasisSpec& network_basis = model.network_basis();
  const AdditiveComponent& additive = model.additive();

  std::vector<int> degrees = network_basis.degrees();
  for (std::size_t m = 0; m < model.linear_attrs().size(); ++m) {
    const std::size_t j = model.linear_attrs()[m];
    degrees[j] = std::max(degrees[j], additive.spec().degree(m));
  }
  BasisSpec merged(degrees);
  std::vector<double> coeffs(merged.width(), 0.0);
  for (std::size_t j = 0; j < merged.num_attributes(); ++j) {
    for (int d = 0; d < network_basis.degree(j); ++d) {
      coeffs[merged.offset(j) + d] += (1.0 - a) * affine.coefficients[network_basis.offset(j) + d];
    }
  }
  for (std::size_t m = 0; m < model.linear_attrs().size(); ++m) {
    const std::size_t j = model.linear_attrs()[m];
    const auto p = additive.marginal_coeffs(m);
    for (std::size_t d = 0; d < p.size(); ++d) {
      coeffs[merged.offset(j) + d] += a * additive.weights()[m] * p[d];
    }
  }
  return {AdditiveComponent(merged, std::vector<double>(merged.num_attributes(), 1.0),
                            std::move(coeffs)),
          (1.0 - a) * affine.offset};
}

}  // namespace mcda
