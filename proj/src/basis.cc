#include "mcda/basis.h"

#include <string>

#include "mcda/errors.h"

namespace mcda {

BasisSpec::BasisSpec(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  offsets_.reserve(degrees_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t j = 0; j < degrees_.size(); ++j) {
    if (degrees_[j] < 1) {
      throw ConfigError("polynomial degree for attribute " + std::to_string(j) +
                        " must be >= 1, got " + std::to_string(degrees_[j]));
    }
    offsets_.push_back(offsets_.back() + static_cast<std::size_t>(degrees_[j]));
  }
}

BasisSpec BasisSpec::Uniform(std::size_t num_attributes, int degree) {
  return BasisSpec(std::vector<int>(num_attributes, degree));
}

namespace {

void FillPowers(double x, int degree, double* out) {
  double power = x;
  for (int d = 0; d < degree; ++d) {
    out[d] = power;
    power *= x;
  }
}

void CheckLength(std::size_t got, const BasisSpec& spec) {
  if (got != spec.num_attributes()) {
    throw SchemaError("attribute vector has " + std::to_string(got) +
                      " entries, basis expects " +
                      std::to_string(spec.num_attributes()));
  }
}

}  // namespace

std::vector<double> ExpandScalar(double x, int degree) {
  if (degree < 1) {
    throw ConfigError("polynomial degree must be >= 1, got " +
                      std::to_string(degree));
  }
  std::vector<double> out(static_cast<std::size_t>(degree));
  FillPowers(x, degree, out.data());
  return out;
}

void ExpandVectorInto(std::span<const double> x, const BasisSpec& spec,
                      std::span<double> out) {
  CheckLength(x.size(), spec);
  if (out.size() != spec.width()) {
    throw SchemaError("expansion buffer has " + std::to_string(out.size()) +
                      " entries, basis width is " + std::to_string(spec.width()));
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    FillPowers(x[j], spec.degree(j), out.data() + spec.offset(j));
  }
}

std::vector<double> ExpandVector(std::span<const double> x, const BasisSpec& spec) {
  std::vector<double> out(spec.width());
  ExpandVectorInto(x, spec, out);
  return out;
}

std::vector<double> PairwiseDiff(std::span<const double> x_i,
                                 std::span<const double> x_k,
                                 const BasisSpec& spec) {
  std::vector<double> out = ExpandVector(x_i, spec);
  const std::vector<double> other = ExpandVector(x_k, spec);
  for (std::size_t d = 0; d < out.size(); ++d) out[d] -= other[d];
  return out;
}

}  // namespace mcda
