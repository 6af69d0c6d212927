#ifndef MCDA_EXPLAIN_H_
#define MCDA_EXPLAIN_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcda/hybrid.h"

namespace mcda {

// w_j v_j sampled on an even grid over [0, 1].
struct MarginalCurve {
  std::size_t attribute = 0;  // index in the model's attribute list
  std::vector<double> x;
  std::vector<double> y;
  // Power coefficients of w_j v_j, entry d-1 multiplying x^d.
  std::vector<double> coefficients;
};

// Throws SchemaError when `attribute` is not in the linear component and
// ConfigError for fewer than two grid points.
MarginalCurve SampleMarginalCurve(const HybridModel& model, std::size_t attribute,
                                  std::size_t grid_size);

enum class ExtremumKind { kMinimum, kMaximum };

struct Extremum {
  double x = 0.0;
  ExtremumKind kind = ExtremumKind::kMinimum;
};

struct CurveDiagnostics {
  std::vector<double> zero_crossings;     // roots of v in (0, 1)
  std::vector<Extremum> inflexions;       // roots of v' in (0, 1)
  std::vector<double> concavity_changes;  // roots of v'' in (0, 1)
  double max_abs = 0.0;                   // max |v| over [0, 1]
  bool near_zero = false;
};

// Sign changes of the polynomial sum_d coefficients[d-1] x^d and of its
// first two derivatives, located on 1024 subintervals and refined by
// bisection to 1e-8. Boundary roots are not reported. near_zero is set only
// for the zero polynomial.
CurveDiagnostics DiagnosePolynomial(std::span<const double> coefficients);

// Diagnostics of every linear attribute, in linear_attrs order. An attribute
// is near zero when its max |w_j v_j| is below 1% of the largest one.
std::vector<CurveDiagnostics> DiagnoseModel(const HybridModel& model);

double EvaluatePowerSeries(std::span<const double> coefficients, double x);

struct ImportanceEntry {
  std::size_t attribute = 0;
  std::string name;
  double weight = 0.0;
  double normalized = 0.0;
  std::size_t rank = 0;  // 1-based
};

// Normalized weights of the linear attributes, ordered by descending weight
// with ties broken by attribute index. Throws DegenerateModelError when all
// weights are zero.
std::vector<ImportanceEntry> AttributeImportance(const HybridModel& model);

enum class AlphaRecommendation { kFullComplexity, kSimplerModel, kAcceptHybrid };

std::string_view RecommendationName(AlphaRecommendation recommendation);

// alpha <= 0.1: full complexity; alpha >= 0.9: simpler model; otherwise the
// hybrid is kept. Throws ConfigError outside [0, 1].
AlphaRecommendation InterpretAlpha(double alpha);

}  // namespace mcda

#endif  // MCDA_EXPLAIN_H_
