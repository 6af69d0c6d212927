#ifndef MCDA_EXPERIMENTS_H_
#define MCDA_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcda/explain.h"
#include "mcda/synth.h"
#include "mcda/train.h"

namespace mcda {

// Progress lines from long runs; may be empty.
using ProgressFn = std::function<void(const std::string&)>;

// Test AUC of pairwise examples scored by a model.
double PairAuc(const HybridModel& model, const TrainingSet& test);

// Degree / training-size grid on the three dataset families.
struct Experiment1Config {
  std::vector<Family> families = {Family::kLinear, Family::kPolynomial3, Family::kPolynomial15};
  std::vector<std::size_t> attributes = {3};
  std::vector<int> degrees = {1, 2, 3, 5, 10};
  std::vector<double> sizes = {0.7};
  int repetitions = 5;
  std::size_t num_alternatives = 250;
  double noise_scale = 1.0;
  std::uint64_t seed = 2024;
  // Iteration cap; the pass count is chosen by cross-validation when
  // cv_folds > 1, otherwise train.iterations passes are run.
  TrainConfig train = DefaultTrainConfig();
  int cv_folds = 5;
  std::vector<std::size_t> hidden_widths = {64, 64};

  static TrainConfig DefaultTrainConfig();
  // Full grid: sizes 0.5..0.9, n in {3, 5}, 10 repetitions.
  static Experiment1Config Full();
};

struct Experiment1Cell {
  Family family = Family::kLinear;
  std::size_t attributes = 0;
  int degree = 0;
  double size = 0.0;
  std::vector<double> aucs;
  std::vector<double> alphas;
  std::vector<int> iterations;
  std::vector<double> seconds;
  std::vector<std::string> errors;
  double mean_auc = 0.0;
  double std_auc = 0.0;
  double mean_alpha = 0.0;
};

struct Experiment1Report {
  Experiment1Config config;
  std::vector<Experiment1Cell> cells;

  // Mean AUC over the cells of one (family, n, degree), all sizes pooled.
  double MeanAuc(Family family, std::size_t attributes, int degree) const;
  // Mean training seconds per degree over every cell.
  std::vector<std::pair<int, double>> SecondsByDegree() const;
  bool TimeIncreasesWithDegree() const;

  // Deterministic content only (no timings).
  nlohmann::json ToJson() const;
  std::string ToCsv() const;
  nlohmann::json TimingJson() const;
};

Experiment1Report RunExperiment1(const Experiment1Config& config, const ProgressFn& progress = {});

// Fixed-alpha grid: each model is fit on all C(N, 2) pairs of one sample and
// tested on the pairs of a second, independent sample from the same truth.
struct Experiment2Config {
  std::vector<Family> families = {Family::kLinear, Family::kPolynomial3, Family::kPolynomial15};
  std::vector<std::size_t> attributes = {3};
  int alpha_points = 20;
  int repetitions = 5;
  std::size_t num_alternatives = 250;
  double noise_scale = 1.0;
  int degree = 3;
  std::uint64_t seed = 2025;
  TrainConfig train = DefaultTrainConfig();
  std::vector<std::size_t> hidden_widths = {64};

  static TrainConfig DefaultTrainConfig();
  static Experiment2Config Full();
  std::vector<double> Alphas() const;
};

struct Experiment2Row {
  Family family = Family::kLinear;
  std::size_t attributes = 0;
  double alpha = 0.0;
  std::vector<double> aucs;
  std::vector<std::string> errors;
  double mean_auc = 0.0;
  double std_auc = 0.0;
};

struct Experiment2Report {
  Experiment2Config config;
  std::vector<Experiment2Row> rows;
  double seconds = 0.0;

  // Mean AUC over the rows with lo <= alpha <= hi.
  double MeanAucInRange(Family family, std::size_t attributes, double lo, double hi) const;

  nlohmann::json ToJson() const;
  std::string ToCsv() const;
};

Experiment2Report RunExperiment2(const Experiment2Config& config, const ProgressFn& progress = {});

// Marginal recovery on the fixed synthetic models.
struct Experiment3Config {
  std::vector<int> kinds = {1, 2, 3, 4};
  int repetitions = 5;
  std::size_t num_alternatives = 250;
  double noise_scale = 0.0;
  double split = 0.8;
  int degree = 3;
  std::size_t grid_size = 101;
  std::uint64_t seed = 2026;
  TrainConfig train = DefaultTrainConfig();
  std::vector<std::size_t> hidden_widths = {64};

  static TrainConfig DefaultTrainConfig();
};

// Fidelity of one fitted marginal against the truth.
struct CurveFidelity {
  double correlation = 0.0;  // |Pearson| of the fitted and true curves on the grid
  bool slope_sign_match = false;
  int true_monotonicity_changes = 0;
  int fitted_monotonicity_changes = 0;
};

struct Experiment3Fit {
  int kind = 0;
  std::string model;  // "hybrid" or "baseline"
  int repetition = 0;
  double test_auc = 0.0;
  double alpha = 0.0;
  std::vector<CurveFidelity> attributes;
  std::vector<std::vector<double>> fitted_curves;  // one per attribute, on the grid
  std::string error;
};

struct Experiment3Report {
  Experiment3Config config;
  std::vector<double> grid;
  std::vector<std::vector<std::vector<double>>> true_curves;  // [kind index][attribute]
  std::vector<Experiment3Fit> fits;

  nlohmann::json ToJson() const;
  std::string SummaryCsv() const;
  // Columns x, true, fitted by repetition, for one kind / model / attribute.
  std::string CurveCsv(int kind, const std::string& model, std::size_t attribute) const;
};

// Fidelity metrics of a fitted curve; slopes are compared through the
// endpoint difference of each curve.
CurveFidelity CompareCurves(std::span<const double> fitted, std::span<const double> truth,
                            int fitted_changes, int true_changes);

Experiment3Report RunExperiment3(const Experiment3Config& config, const ProgressFn& progress = {});

}  // namespace mcda

#endif  // MCDA_EXPERIMENTS_H_
