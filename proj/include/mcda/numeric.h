#ifndef MCDA_NUMERIC_H_
#define MCDA_NUMERIC_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mcda {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> mutable_row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& mutable_data() { return data_; }

  Matrix Transposed() const;
  bool AllFinite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// a * b. Throws SchemaError when inner dimensions differ.
Matrix Multiply(const Matrix& a, const Matrix& b);

// a^T v for a (rows x cols) and v of length rows.
std::vector<double> MultiplyTransposed(const Matrix& a, std::span<const double> v);

double Dot(std::span<const double> a, std::span<const double> b);

// Numerically stable logistic function.
double Sigmoid(double x);
double Relu(double x);

// Seeded pseudo-random generator: xoshiro256** 1.0 (Blackman & Vigna), state
// initialised from the 64-bit seed by four SplitMix64 steps. Uniform doubles
// use the top 53 bits; normal draws use the Box-Muller transform with the
// second variate of each pair cached. The sequence is a pure function of the
// seed and call order.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t operator()() { return Next(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  std::uint64_t Next();
  // [0, 1).
  double Uniform01();
  // [lo, hi). Throws ConfigError unless lo < hi.
  double Uniform(double lo, double hi);
  // Integer in [0, n) by multiply-shift; n > 0.
  std::size_t UniformIndex(std::size_t n);
  double StandardNormal();

  // Independent generator for sub-task `stream`: seed is
  // SplitMix64(seed ^ SplitMix64(stream)).
  Rng Derive(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t state_[4];
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Seed for a child task identified by a list of integers.
std::uint64_t DeriveSeed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

// Fisher-Yates shuffle driven by Rng::UniformIndex.
template <typename T>
void Shuffle(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = rng.UniformIndex(i);
    std::swap(values[i - 1], values[j]);
  }
}

// 64-bit FNV-1a, continuing from `state`.
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
std::uint64_t Fnv1a(const void* data, std::size_t size, std::uint64_t state = kFnvOffset);
// 16 lowercase hex digits.
std::string Hex64(std::uint64_t value);

// 0, 1, ..., n-1 in seeded random order.
std::vector<std::size_t> Permutation(std::size_t n, Rng& rng);

}  // namespace mcda

#endif  // MCDA_NUMERIC_H_
