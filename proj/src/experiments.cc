#include "mcda/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>

#include "mcda/errors.h"
#include "mcda/metrics.h"
#include "mcda/ranking.h"

namespace mcda {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t FamilyCode(Family family) { return static_cast<std::uint64_t>(family); }

ModelSpec SpecFor(std::size_t attributes, int degree, const std::vector<std::size_t>& widths) {
  ModelSpec spec = ModelSpec::Uniform(attributes, degree);
  spec.hidden_widths = widths;
  return spec;
}

// Shortest round-trip text of a double, for CSV cells.
std::string Num(double v) { return nlohmann::json(v).dump(); }

int CountMonotonicityChanges(const MarginalFunction& f) {
  constexpr int kGrid = 10000;
  int changes = 0;
  int last_sign = 0;
  double prev = f(0.0);
  for (int g = 1; g <= kGrid; ++g) {
    const double cur = f(static_cast<double>(g) / kGrid);
    const double diff = cur - prev;
    prev = cur;
    if (std::abs(diff) < 1e-12) continue;
    const int sign = diff > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace

double PairAuc(const HybridModel& model, const TrainingSet& test) {
  const std::vector<double> scores = ScoreItems(model, test.items);
  std::vector<double> logits;
  std::vector<double> labels;
  logits.reserve(test.examples.size());
  labels.reserve(test.examples.size());
  for (const Example& ex : test.examples) {
    logits.push_back(ExampleLogit(ex, scores));
    labels.push_back(ex.label);
  }
  return Auc(logits, labels).auc;
}

// ---------------------------------------------------------------------------
// Experiment I

TrainConfig Experiment1Config::DefaultTrainConfig() {
  TrainConfig config;
  config.optimizer = OptimizerKind::kAdam;
  config.learning_rate = 1e-2;
  config.iterations = 2000;
  config.batch_size = 0;
  return config;
}

Experiment1Config Experiment1Config::Full() {
  Experiment1Config config;
  config.attributes = {3, 5};
  config.sizes = {0.5, 0.6, 0.7, 0.8, 0.9};
  config.repetitions = 10;
  return config;
}

double Experiment1Report::MeanAuc(Family family, std::size_t attributes, int degree) const {
  double sum = 0.0;
  int count = 0;
  for (const Experiment1Cell& cell : cells) {
    if (cell.family != family || cell.attributes != attributes || cell.degree != degree) continue;
    for (double auc : cell.aucs) {
      sum += auc;
      ++count;
    }
  }
  if (count == 0) throw EvaluationError("no completed runs for the requested cell");
  return sum / count;
}

std::vector<std::pair<int, double>> Experiment1Report::SecondsByDegree() const {
  std::map<int, std::pair<double, int>> acc;
  for (const Experiment1Cell& cell : cells) {
    for (double s : cell.seconds) {
      acc[cell.degree].first += s;
      acc[cell.degree].second += 1;
    }
  }
  std::vector<std::pair<int, double>> out;
  for (const auto& [degree, sum] : acc) out.emplace_back(degree, sum.first / sum.second);
  return out;
}

bool Experiment1Report::TimeIncreasesWithDegree() const {
  const auto by_degree = SecondsByDegree();
  for (std::size_t i = 1; i < by_degree.size(); ++i) {
    if (by_degree[i].second < by_degree[i - 1].second) return false;
  }
  return true;
}

nlohmann::json Experiment1Report::ToJson() const {
  nlohmann::json j;
  j["experiment"] = 1;
  j["seed"] = config.seed;
  j["repetitions"] = config.repetitions;
  j["num_alternatives"] = config.num_alternatives;
  j["noise_scale"] = config.noise_scale;
  j["cv_folds"] = config.cv_folds;
  j["hidden_widths"] = config.hidden_widths;
  j["train"] = {{"optimizer", OptimizerName(config.train.optimizer)},
                {"learning_rate", config.train.learning_rate},
                {"max_iterations", config.train.iterations},
                {"batch_size", config.train.batch_size}};
  j["cells"] = nlohmann::json::array();
  for (const Experiment1Cell& c : cells) {
    j["cells"].push_back({{"family", FamilyName(c.family)},
                          {"attributes", c.attributes},
                          {"degree", c.degree},
                          {"training_size", c.size},
                          {"aucs", c.aucs},
                          {"mean_auc", c.mean_auc},
                          {"std_auc", c.std_auc},
                          {"alphas", c.alphas},
                          {"mean_alpha", c.mean_alpha},
                          {"iterations", c.iterations},
                          {"errors", c.errors}});
  }
  return j;
}

std::string Experiment1Report::ToCsv() const {
  std::ostringstream out;
  out << "family,attributes,degree,training_size,mean_auc,std_auc,mean_alpha,runs,failures\n";
  for (const Experiment1Cell& c : cells) {
    out << FamilyName(c.family) << ',' << c.attributes << ',' << c.degree << ',' << Num(c.size)
        << ',' << Num(c.mean_auc) << ',' << Num(c.std_auc) << ',' << Num(c.mean_alpha) << ','
        << c.aucs.size() << ',' << c.errors.size() << '\n';
  }
  return out.str();
}

nlohmann::json Experiment1Report::TimingJson() const {
  nlohmann::json j;
  j["seconds_by_degree"] = nlohmann::json::array();
  for (const auto& [degree, seconds] : SecondsByDegree()) {
    j["seconds_by_degree"].push_back({{"degree", degree}, {"mean_seconds", seconds}});
  }
  j["time_increases_with_degree"] = TimeIncreasesWithDegree();
  j["cells"] = nlohmann::json::array();
  for (const Experiment1Cell& c : cells) {
    j["cells"].push_back({{"family", FamilyName(c.family)},
                          {"attributes", c.attributes},
                          {"degree", c.degree},
                          {"training_size", c.size},
                          {"seconds", c.seconds}});
  }
  return j;
}

Experiment1Report RunExperiment1(const Experiment1Config& config, const ProgressFn& progress) {
  if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  Experiment1Report report;
  report.config = config;
  for (Family family : config.families) {
    for (std::size_t n : config.attributes) {
      for (std::size_t size_idx = 0; size_idx < config.sizes.size(); ++size_idx) {
        const double size = config.sizes[size_idx];
        std::vector<Experiment1Cell> row(config.degrees.size());
        for (std::size_t d = 0; d < config.degrees.size(); ++d) {
          row[d].family = family;
          row[d].attributes = n;
          row[d].degree = config.degrees[d];
          row[d].size = size;
        }
        for (int rep = 0; rep < config.repetitions; ++rep) {
          // Dataset and split are shared by every degree of a repetition.
          SyntheticSpec spec;
          spec.family = family;
          spec.num_alternatives = config.num_alternatives;
          spec.num_attributes = n;
          spec.noise_scale = config.noise_scale;
          spec.seed = DeriveSeed(config.seed, {1, FamilyCode(family), n,
                                               static_cast<std::uint64_t>(rep)});
          TrainingSet pairs;
          SplitIndices split;
          try {
            pairs = LabeledPairs(GenerateDataset(spec));
            split = Split(pairs.examples.size(), size,
                          DeriveSeed(spec.seed, {2, static_cast<std::uint64_t>(size_idx)}));
          } catch (const std::exception& e) {
            for (Experiment1Cell& cell : row) cell.errors.push_back(e.what());
            continue;
          }
          const TrainingSet train = pairs.Subset(split.train);
          const TrainingSet test = pairs.Subset(split.test);
          for (std::size_t d = 0; d < config.degrees.size(); ++d) {
            Experiment1Cell& cell = row[d];
            try {
              const auto start = Clock::now();
              const ModelSpec model_spec = SpecFor(n, cell.degree, config.hidden_widths);
              TrainConfig train_config = config.train;
              train_config.seed = DeriveSeed(spec.seed, {3, static_cast<std::uint64_t>(size_idx),
                                                         static_cast<std::uint64_t>(cell.degree)});
              if (config.cv_folds > 1) {
                train_config.iterations =
                    SelectIterationsCv(train, model_spec, train_config, config.cv_folds).iterations;
              }
              const TrainResult result = Train(train, model_spec, train_config);
              cell.aucs.push_back(PairAuc(result.model, test));
              cell.alphas.push_back(result.model.alpha());
              cell.iterations.push_back(train_config.iterations);
              cell.seconds.push_back(SecondsSince(start));
              if (progress) {
                std::ostringstream msg;
                msg << "experiment 1: " << FamilyName(family) << " n=" << n
                    << " degree=" << cell.degree << " size=" << size << " rep=" << rep
                    << " auc=" << cell.aucs.back() << " alpha=" << cell.alphas.back()
                    << " iterations=" << train_config.iterations;
                progress(msg.str());
              }
            } catch (const std::exception& e) {
              cell.errors.push_back(e.what());
            }
          }
        }
        for (Experiment1Cell& cell : row) {
          const MeanStd auc = Summarize(cell.aucs);
          cell.mean_auc = auc.mean;
          cell.std_auc = auc.std;
          cell.mean_alpha = Summarize(cell.alphas).mean;
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Experiment II

TrainConfig Experiment2Config::DefaultTrainConfig() {
  TrainConfig config;
  config.optimizer = OptimizerKind::kSgd;
  config.learning_rate = 0.1;
  config.iterations = 250;
  config.batch_size = 1024;
  config.alpha_mode = AlphaMode::kFixed;
  return config;
}

Experiment2Config Experiment2Config::Full() {
  Experiment2Config config;
  config.attributes = {3, 5, 10};
  config.repetitions = 10;
  return config;
}

std::vector<double> Experiment2Config::Alphas() const {
  if (alpha_points < 2) throw ConfigError("the alpha grid needs at least two points");
  std::vector<double> out(alpha_points);
  for (int i = 0; i < alpha_points; ++i) out[i] = static_cast<double>(i) / (alpha_points - 1);
  return out;
}

double Experiment2Report::MeanAucInRange(Family family, std::size_t attributes, double lo,
                                         double hi) const {
  double sum = 0.0;
  int count = 0;
  for (const Experiment2Row& row : rows) {
    if (row.family != family || row.attributes != attributes) continue;
    if (row.alpha < lo || row.alpha > hi) continue;
    for (double auc : row.aucs) {
      sum += auc;
      ++count;
    }
  }
  if (count == 0) throw EvaluationError("no completed runs in the requested alpha range");
  return sum / count;
}

nlohmann::json Experiment2Report::ToJson() const {
  nlohmann::json j;
  j["experiment"] = 2;
  j["seed"] = config.seed;
  j["repetitions"] = config.repetitions;
  j["num_alternatives"] = config.num_alternatives;
  j["noise_scale"] = config.noise_scale;
  j["degree"] = config.degree;
  j["hidden_widths"] = config.hidden_widths;
  j["train"] = {{"optimizer", OptimizerName(config.train.optimizer)},
                {"learning_rate", config.train.learning_rate},
                {"iterations", config.train.iterations},
                {"batch_size", config.train.batch_size}};
  j["rows"] = nlohmann::json::array();
  for (const Experiment2Row& r : rows) {
    j["rows"].push_back({{"family", FamilyName(r.family)},
                         {"attributes", r.attributes},
                         {"alpha", r.alpha},
                         {"aucs", r.aucs},
                         {"mean_auc", r.mean_auc},
                         {"std_auc", r.std_auc},
                         {"errors", r.errors}});
  }
  return j;
}

std::string Experiment2Report::ToCsv() const {
  std::ostringstream out;
  out << "family,attributes,alpha,mean_auc,std_auc,runs,failures\n";
  for (const Experiment2Row& r : rows) {
    out << FamilyName(r.family) << ',' << r.attributes << ',' << Num(r.alpha) << ','
        << Num(r.mean_auc) << ',' << Num(r.std_auc) << ',' << r.aucs.size() << ','
        << r.errors.size() << '\n';
  }
  return out.str();
}

Experiment2Report RunExperiment2(const Experiment2Config& config, const ProgressFn& progress) {
  if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  const auto start = Clock::now();
  const std::vector<double> alphas = config.Alphas();
  Experiment2Report report;
  report.config = config;
  for (Family family : config.families) {
    for (std::size_t n : config.attributes) {
      std::vector<Experiment2Row> rows(alphas.size());
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        rows[a].family = family;
        rows[a].attributes = n;
        rows[a].alpha = alphas[a];
      }
      for (int rep = 0; rep < config.repetitions; ++rep) {
        SyntheticSpec spec;
        spec.family = family;
        spec.num_alternatives = config.num_alternatives;
        spec.num_attributes = n;
        spec.noise_scale = config.noise_scale;
        spec.seed = DeriveSeed(config.seed, {1, FamilyCode(family), n,
                                             static_cast<std::uint64_t>(rep)});
        TrainingSet train;
        TrainingSet test;
        try {
          const SyntheticDataset fit_sample = GenerateDataset(spec);
          SyntheticSpec test_spec = spec;
          test_spec.seed = DeriveSeed(spec.seed, {2});
          train = LabeledPairs(fit_sample);
          test = LabeledPairs(GenerateDataset(test_spec, fit_sample.truth));
        } catch (const std::exception& e) {
          for (Experiment2Row& row : rows) row.errors.push_back(e.what());
          continue;
        }
        const ModelSpec model_spec = SpecFor(n, config.degree, config.hidden_widths);
        for (std::size_t a = 0; a < alphas.size(); ++a) {
          try {
            TrainConfig train_config = config.train;
            train_config.alpha_mode = AlphaMode::kFixed;
            train_config.fixed_alpha = alphas[a];
            // One initialization per repetition, shared across the alpha grid.
            train_config.seed = DeriveSeed(spec.seed, {3});
            const TrainResult result = Train(train, model_spec, train_config);
            rows[a].aucs.push_back(PairAuc(result.model, test));
            if (progress) {
              std::ostringstream msg;
              msg << "experiment 2: " << FamilyName(family) << " n=" << n << " rep=" << rep
                  << " alpha=" << alphas[a] << " auc=" << rows[a].aucs.back();
              progress(msg.str());
            }
          } catch (const std::exception& e) {
            rows[a].errors.push_back(e.what());
          }
        }
      }
      for (Experiment2Row& row : rows) {
        const MeanStd auc = Summarize(row.aucs);
        row.mean_auc = auc.mean;
        row.std_auc = auc.std;
        report.rows.push_back(std::move(row));
      }
    }
  }
  report.seconds = SecondsSince(start);
  return report;
}

// ---------------------------------------------------------------------------
// Experiment III

TrainConfig Experiment3Config::DefaultTrainConfig() {
  TrainConfig config;
  config.optimizer = OptimizerKind::kAdam;
  config.learning_rate = 1e-2;
  config.iterations = 300;
  config.batch_size = 0;
  return config;
}

CurveFidelity CompareCurves(std::span<const double> fitted, std::span<const double> truth,
                            int fitted_changes, int true_changes) {
  if (fitted.size() != truth.size() || fitted.size() < 2) {
    throw EvaluationError("curves must share a grid of at least two points");
  }
  CurveFidelity out;
  out.correlation = std::abs(Pearson(fitted, truth));
  const double fitted_slope = fitted.back() - fitted.front();
  const double true_slope = truth.back() - truth.front();
  out.slope_sign_match = (fitted_slope > 0.0 && true_slope > 0.0) ||
                         (fitted_slope < 0.0 && true_slope < 0.0);
  out.fitted_monotonicity_changes = fitted_changes;
  out.true_monotonicity_changes = true_changes;
  return out;
}

nlohmann::json Experiment3Report::ToJson() const {
  nlohmann::json j;
  j["experiment"] = 3;
  j["seed"] = config.seed;
  j["repetitions"] = config.repetitions;
  j["num_alternatives"] = config.num_alternatives;
  j["noise_scale"] = config.noise_scale;
  j["split"] = config.split;
  j["degree"] = config.degree;
  j["train"] = {{"optimizer", OptimizerName(config.train.optimizer)},
                {"learning_rate", config.train.learning_rate},
                {"iterations", config.train.iterations},
                {"batch_size", config.train.batch_size}};
  j["truths"] = nlohmann::json::array();
  for (int kind : config.kinds) {
    j["truths"].push_back({{"kind", kind}, {"truth", SyntheticModel(kind).ToJson()}});
  }
  j["fits"] = nlohmann::json::array();
  for (const Experiment3Fit& f : fits) {
    nlohmann::json attrs = nlohmann::json::array();
    for (const CurveFidelity& c : f.attributes) {
      attrs.push_back({{"correlation", c.correlation},
                       {"slope_sign_match", c.slope_sign_match},
                       {"true_monotonicity_changes", c.true_monotonicity_changes},
                       {"fitted_monotonicity_changes", c.fitted_monotonicity_changes}});
    }
    j["fits"].push_back({{"kind", f.kind},
                         {"model", f.model},
                         {"repetition", f.repetition},
                         {"test_auc", f.test_auc},
                         {"alpha", f.alpha},
                         {"attributes", std::move(attrs)},
                         {"error", f.error}});
  }
  return j;
}

std::string Experiment3Report::SummaryCsv() const {
  std::ostringstream out;
  out << "kind,model,repetition,attribute,correlation,slope_sign_match,"
         "true_monotonicity_changes,fitted_monotonicity_changes,test_auc,alpha\n";
  for (const Experiment3Fit& f : fits) {
    for (std::size_t a = 0; a < f.attributes.size(); ++a) {
      const CurveFidelity& c = f.attributes[a];
      out << f.kind << ',' << f.model << ',' << f.repetition << ',' << a + 1 << ','
          << Num(c.correlation) << ',' << (c.slope_sign_match ? 1 : 0) << ','
          << c.true_monotonicity_changes << ',' << c.fitted_monotonicity_changes << ','
          << Num(f.test_auc) << ',' << Num(f.alpha) << '\n';
    }
  }
  return out.str();
}

std::string Experiment3Report::CurveCsv(int kind, const std::string& model,
                                        std::size_t attribute) const {
  const auto kind_it = std::find(config.kinds.begin(), config.kinds.end(), kind);
  if (kind_it == config.kinds.end()) throw ConfigError("kind not part of this report");
  const auto k = static_cast<std::size_t>(kind_it - config.kinds.begin());
  std::vector<const Experiment3Fit*> selected;
  for (const Experiment3Fit& f : fits) {
    if (f.kind == kind && f.model == model && f.error.empty()) selected.push_back(&f);
  }
  std::ostringstream out;
  out << "x,true";
  for (const Experiment3Fit* f : selected) out << ",fitted_rep" << f->repetition;
  out << '\n';
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out << Num(grid[g]) << ',' << Num(true_curves[k][attribute][g]);
    for (const Experiment3Fit* f : selected) out << ',' << Num(f->fitted_curves[attribute][g]);
    out << '\n';
  }
  return out.str();
}

Experiment3Report RunExperiment3(const Experiment3Config& config, const ProgressFn& progress) {
  if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (config.grid_size < 2) throw ConfigError("curve grid needs at least two points");
  Experiment3Report report;
  report.config = config;
  for (std::size_t g = 0; g < config.grid_size; ++g) {
    report.grid.push_back(static_cast<double>(g) / static_cast<double>(config.grid_size - 1));
  }

  for (int kind : config.kinds) {
    const GroundTruth truth = SyntheticModel(kind);
    std::vector<std::vector<double>> curves;
    std::vector<int> true_changes;
    for (const MarginalFunction& m : truth.marginals) {
      std::vector<double> curve;
      for (double x : report.grid) curve.push_back(m(x));
      curves.push_back(std::move(curve));
      true_changes.push_back(CountMonotonicityChanges(m));
    }
    report.true_curves.push_back(curves);

    for (int rep = 0; rep < config.repetitions; ++rep) {
      SyntheticSpec spec;
      spec.num_alternatives = config.num_alternatives;
      spec.num_attributes = truth.num_attributes();
      spec.noise_scale = config.noise_scale;
      // Every kind sees the same attribute vectors in a repetition.
      spec.seed = DeriveSeed(config.seed, {1, static_cast<std::uint64_t>(rep)});
      const TrainingSet pairs = LabeledPairs(GenerateDataset(spec, truth));
      const SplitIndices split = Split(pairs.examples.size(), config.split, DeriveSeed(spec.seed, {2}));
      const TrainingSet train = pairs.Subset(split.train);
      const TrainingSet test = pairs.Subset(split.test);

      struct Variant {
        std::string name;
        int degree;
        bool baseline;
      };
      for (const Variant& v : {Variant{"hybrid", config.degree, false},
                               Variant{"baseline", 1, true}}) {
        Experiment3Fit fit;
        fit.kind = kind;
        fit.model = v.name;
        fit.repetition = rep;
        try {
          ModelSpec model_spec = SpecFor(truth.num_attributes(), v.degree, config.hidden_widths);
          TrainConfig train_config = config.train;
          train_config.seed = DeriveSeed(spec.seed, {3, static_cast<std::uint64_t>(kind)});
          if (v.baseline) {
            train_config.alpha_mode = AlphaMode::kFixed;
            train_config.fixed_alpha = 1.0;
          }
          const TrainResult result = Train(train, model_spec, train_config);
          fit.test_auc = PairAuc(result.model, test);
          fit.alpha = result.model.alpha();
          const auto diagnostics = DiagnoseModel(result.model);
          for (std::size_t a = 0; a < truth.num_attributes(); ++a) {
            const MarginalCurve curve = SampleMarginalCurve(result.model, a, config.grid_size);
            fit.attributes.push_back(CompareCurves(
                curve.y, curves[a], static_cast<int>(diagnostics[a].inflexions.size()),
                true_changes[a]));
            fit.fitted_curves.push_back(curve.y);
          }
          if (progress) {
            std::ostringstream msg;
            msg << "experiment 3: kind=" << kind << ' ' << v.name << " rep=" << rep
                << " auc=" << fit.test_auc << " alpha=" << fit.alpha;
            progress(msg.str());
          }
        } catch (const std::exception& e) {
          fit.error = e.what();
        }
        report.fits.push_back(std::move(fit));
      }
    }
  }
  return report;
}

}  // namespace mcda
