#include "mcda/explain.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mcda/errors.h"

namespace mcda {

namespace {

constexpr int kScanIntervals = 1024;
constexpr double kRootTolerance = 1e-8;
constexpr double kNearZeroFraction = 0.01;

// Power series with an explicit constant term: sum_d a[d] x^d.
double Horner(std::span<const double> a, double x) {
  double value = 0.0;
  for (std::size_t d = a.size(); d > 0; --d) value = value * x + a[d - 1];
  return value;
}

std::vector<double> Derivative(std::span<const double> a) {
  std::vector<double> out;
  for (std::size_t d = 1; d < a.size(); ++d) out.push_back(static_cast<double>(d) * a[d]);
  return out;
}

double Bisect(std::span<const double> a, double lo, double hi, double f_lo) {
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = Horner(a, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Interior points where the polynomial changes sign.
std::vector<double> SignChanges(std::span<const double> a) {
  std::vector<double> roots;
  if (std::all_of(a.begin(), a.end(), [](double c) { return c == 0.0; })) return roots;
  std::vector<double> f(kScanIntervals + 1);
  for (int g = 0; g <= kScanIntervals; ++g) f[g] = Horner(a, static_cast<double>(g) / kScanIntervals);
  for (int g = 0; g < kScanIntervals; ++g) {
    const double lo = static_cast<double>(g) / kScanIntervals;
    const double hi = static_cast<double>(g + 1) / kScanIntervals;
    if (f[g] * f[g + 1] < 0.0) {
      roots.push_back(Bisect(a, lo, hi, f[g]));
    } else if (f[g + 1] == 0.0 && g + 1 < kScanIntervals) {
      // Exact zero on a grid node: a crossing when the neighbours disagree.
      int next = g + 2;
      while (next <= kScanIntervals && f[next] == 0.0) ++next;
      if (f[g] != 0.0 && next <= kScanIntervals && f[g] * f[next] < 0.0) roots.push_back(hi);
    }
  }
  return roots;
}

std::vector<double> WithConstant(std::span<const double> coefficients) {
  std::vector<double> a(coefficients.size() + 1, 0.0);
  std::copy(coefficients.begin(), coefficients.end(), a.begin() + 1);
  return a;
}

double MaxAbs(std::span<const double> a) {
  double m = 0.0;
  for (int g = 0; g <= kScanIntervals; ++g) {
    m = std::max(m, std::abs(Horner(a, static_cast<double>(g) / kScanIntervals)));
  }
  return m;
}

}  // namespace

double EvaluatePowerSeries(std::span<const double> coefficients, double x) {
  double value = 0.0;
  for (std::size_t d = coefficients.size(); d > 0; --d) value = (value + coefficients[d - 1]) * x;
  return value;
}

MarginalCurve SampleMarginalCurve(const HybridModel& model, std::size_t attribute,
                                  std::size_t grid_size) {
  if (grid_size < 2) throw ConfigError("a curve needs at least two grid points");
  const auto& linear = model.linear_attrs();
  const auto it = std::find(linear.begin(), linear.end(), attribute);
  if (it == linear.end()) {
    throw SchemaError("attribute " + std::to_string(attribute) +
                      " is not part of the linear component");
  }
  const auto j = static_cast<std::size_t>(it - linear.begin());
  const double w = model.additive().weights()[j];

  MarginalCurve curve;
  curve.attribute = attribute;
  for (double p : model.additive().marginal_coeffs(j)) curve.coefficients.push_back(w * p);
  curve.x.resize(grid_size);
  curve.y.resize(grid_size);
  for (std::size_t g = 0; g < grid_size; ++g) {
    curve.x[g] = static_cast<double>(g) / static_cast<double>(grid_size - 1);
    curve.y[g] = EvaluatePowerSeries(curve.coefficients, curve.x[g]);
  }
  return curve;
}

CurveDiagnostics DiagnosePolynomial(std::span<const double> coefficients) {
  const std::vector<double> a = WithConstant(coefficients);
  const std::vector<double> da = Derivative(a);
  const std::vector<double> dda = Derivative(da);

  CurveDiagnostics out;
  out.max_abs = MaxAbs(a);
  out.near_zero = out.max_abs == 0.0;
  out.zero_crossings = SignChanges(a);
  for (double r : SignChanges(da)) {
    // Slope goes from negative to positive at a minimum.
    const double before = Horner(da, std::max(0.0, r - 1e-6));
    out.inflexions.push_back({r, before < 0.0 ? ExtremumKind::kMinimum : ExtremumKind::kMaximum});
  }
  out.concavity_changes = SignChanges(dda);
  return out;
}

std::vector<CurveDiagnostics> DiagnoseModel(const HybridModel& model) {
  std::vector<CurveDiagnostics> out;
  double largest = 0.0;
  for (std::size_t j = 0; j < model.linear_attrs().size(); ++j) {
    std::vector<double> c;
    const double w = model.additive().weights()[j];
    for (double p : model.additive().marginal_coeffs(j)) c.push_back(w * p);
    out.push_back(DiagnosePolynomial(c));
    largest = std::max(largest, out.back().max_abs);
  }
  for (CurveDiagnostics& d : out) {
    d.near_zero = d.max_abs < kNearZeroFraction * largest || largest == 0.0;
  }
  return out;
}

std::vector<ImportanceEntry> AttributeImportance(const HybridModel& model) {
  const std::vector<double> normalized = model.additive().NormalizedWeights();
  std::vector<ImportanceEntry> out;
  for (std::size_t j = 0; j < normalized.size(); ++j) {
    const std::size_t attr = model.linear_attrs()[j];
    out.push_back({attr, model.spec().attribute_names[attr], model.additive().weights()[j],
                   normalized[j], 0});
  }
  std::stable_sort(out.begin(), out.end(), [](const ImportanceEntry& a, const ImportanceEntry& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.attribute < b.attribute;
  });
  for (std::size_t r = 0; r < out.size(); ++r) out[r].rank = r + 1;
  return out;
}

std::string_view RecommendationName(AlphaRecommendation recommendation) {
  switch (recommendation) {
    case AlphaRecommendation::kFullComplexity:
      return "suggest-full-complexity";
    case AlphaRecommendation::kSimplerModel:
      return "suggest-simpler-model";
    case AlphaRecommendation::kAcceptHybrid:
      return "accept-hybrid";
  }
  return "unknown";
}

AlphaRecommendation InterpretAlpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  if (alpha <= 0.1) return AlphaRecommendation::kFullComplexity;
  if (alpha >= 0.9) return AlphaRecommendation::kSimplerModel;
  return AlphaRecommendation::kAcceptHybrid;
}

}  // namespace mcda
