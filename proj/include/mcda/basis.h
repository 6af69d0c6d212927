#ifndef MCDA_BASIS_H_
#define MCDA_BASIS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace mcda {

// Per-attribute polynomial degrees. Attribute j expands to the block
// (x_j, x_j^2, ..., x_j^{D_j}); blocks are laid out in attribute order.
class BasisSpec {
 public:
  BasisSpec() = default;
  // Throws ConfigError if any degree is < 1.
  explicit BasisSpec(std::vector<int> degrees);
  // Same degree for every one of `num_attributes` attributes.
  static BasisSpec Uniform(std::size_t num_attributes, int degree);

  const std::vector<int>& degrees() const { return degrees_; }
  std::size_t num_attributes() const { return degrees_.size(); }
  int degree(std::size_t j) const { return degrees_[j]; }
  // Sum of degrees.
  std::size_t width() const { return offsets_.empty() ? 0 : offsets_.back(); }
  // Start of attribute j's block in the expanded vector.
  std::size_t offset(std::size_t j) const { return offsets_[j]; }

  friend bool operator==(const BasisSpec& a, const BasisSpec& b) {
    return a.degrees_ == b.degrees_;
  }

 private:
  std::vector<int> degrees_;
  std::vector<std::size_t> offsets_;  // size num_attributes + 1
};

// (x, x^2, ..., x^degree).
std::vector<double> ExpandScalar(double x, int degree);

// Concatenated ExpandScalar blocks. Throws SchemaError on length mismatch.
std::vector<double> ExpandVector(std::span<const double> x, const BasisSpec& spec);
// Writes into `out` (length spec.width()) without allocating.
void ExpandVectorInto(std::span<const double> x, const BasisSpec& spec,
                      std::span<double> out);

// ExpandVector(x_i) - ExpandVector(x_k), elementwise.
std::vector<double> PairwiseDiff(std::span<const double> x_i,
                                 std::span<const double> x_k,
                                 const BasisSpec& spec);

}  // namespace mcda

#endif  // MCDA_BASIS_H_
