// mcda: simulate, train, rank, explain, experiment, eval.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcda/artifact.h"
#include "mcda/errors.h"
#include "mcda/experiments.h"
#include "mcda/explain.h"
#include "mcda/ingest.h"
#include "mcda/metrics.h"
#include "mcda/ranking.h"
#include "mcda/synth.h"
#include "mcda/train.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mcda {
namespace {

constexpr const char* kToolVersion = "1.0.0";

void EnsureDirectory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory '" + dir + "'");
  }
  const fs::path probe = fs::path(dir) / ".write_probe";
  std::ofstream out(probe);
  if (!out) throw std::runtime_error("output directory '" + dir + "' is not writable");
  out.close();
  fs::remove(probe, ec);
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

void RequireFile(const std::string& path, const std::string& what) {
  if (!fs::is_regular_file(path)) throw ConfigError(what + " '" + path + "' does not exist");
}

void WriteManifest(const std::string& dir, const std::string& command, std::uint64_t seed,
                   const json& config, const std::vector<std::string>& files) {
  json manifest = {{"tool", "mcda"},
                   {"tool_version", kToolVersion},
                   {"artifact_format", kArtifactFormat},
                   {"command", command},
                   {"seed", seed},
                   {"config", config},
                   {"config_hash", ConfigHash(config)},
                   {"files", files}};
  WriteJsonFile((fs::path(dir) / "manifest.json").string(), manifest);
}

// "trainable" or "fixed=v".
void ApplyAlpha(const std::string& text, TrainConfig& config) {
  if (text == "trainable") {
    config.alpha_mode = AlphaMode::kTrainable;
    return;
  }
  if (text.rfind("fixed=", 0) == 0) {
    config.alpha_mode = AlphaMode::kFixed;
    try {
      std::size_t used = 0;
      const std::string value = text.substr(6);
      config.fixed_alpha = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse alpha value in '" + text + "'");
    }
    return;
  }
  throw ConfigError("--alpha must be 'trainable' or 'fixed=<value>', got '" + text + "'");
}

std::string CurveFileName(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return "curve_" + out + ".csv";
}

std::string Num(double v) { return json(v).dump(); }

// Training inputs derived from a dataset: pairs of alternatives for score
// data, rows for labelled data.
TrainingSet Supervision(const TabularDataset& data) {
  if (data.ranking) return PairTrainingSet(data.values, data.targets);
  return TrainingSet::Pointwise(data.values, data.targets);
}

double ModelAuc(const HybridModel& model, const TrainingSet& set) {
  return PairAuc(model, set);
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string family = "linear";
  int kind = 0;
  std::size_t n = 3;
  std::size_t N = 250;
  std::uint64_t seed = 0;
  double noise = 1.0;
  std::string out = "sim_out";
};

int RunSimulate(const SimulateArgs& args) {
  SyntheticSpec spec;
  spec.num_alternatives = args.N;
  spec.seed = args.seed;
  spec.noise_scale = args.noise;
  SyntheticDataset data;
  if (args.kind != 0) {
    const GroundTruth truth = SyntheticModel(args.kind);
    spec.num_attributes = truth.num_attributes();
    data = GenerateDataset(spec, truth);
  } else {
    spec.family = ParseFamily(args.family);
    spec.num_attributes = args.n;
    data = GenerateDataset(spec);
  }
  EnsureDirectory(args.out);

  std::ostringstream csv;
  DatasetSchema schema;
  for (std::size_t j = 0; j < spec.num_attributes; ++j) {
    const std::string name = "x" + std::to_string(j + 1);
    csv << name << ',';
    ColumnSpec col;
    col.column = name;
    col.bounds = std::make_pair(0.0, 1.0);
    schema.columns.push_back(col);
  }
  schema.score_column = "score";
  csv << "score\n";
  for (std::size_t r = 0; r < data.items.rows(); ++r) {
    for (double v : data.items.row(r)) csv << Num(v) << ',';
    csv << Num(data.scores[r]) << '\n';
  }
  const fs::path dir(args.out);
  WriteText(dir / "data.csv", csv.str());
  WriteJsonFile((dir / "schema.json").string(), schema.ToJson());
  WriteJsonFile((dir / "truth.json").string(), data.truth.ToJson());
  const json config = {{"family", args.kind != 0 ? "synthetic-model" : args.family},
                       {"kind", args.kind},
                       {"num_alternatives", args.N},
                       {"num_attributes", spec.num_attributes},
                       {"noise_scale", args.noise},
                       {"pairs", NumPairs(args.N)}};
  WriteManifest(args.out, "simulate", args.seed, config, {"data.csv", "schema.json", "truth.json"});
  std::cout << "wrote " << data.items.rows() << " alternatives x " << spec.num_attributes
            << " attributes to " << (dir / "data.csv").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string dataset;
  std::string schema;
  int degree = 3;
  std::string alpha = "trainable";
  std::string optimizer = "adam";
  double lr = 1e-3;
  int iters = 100;
  bool cv_iters = false;
  std::size_t batch = 32;
  std::vector<std::size_t> hidden = {64};
  std::uint64_t seed = 0;
  double split = 0.8;
  std::string loss = "mse";
  std::string out = "train_out";
  bool quiet = false;
};

int RunTrain(const TrainArgs& args) {
  RequireFile(args.dataset, "dataset");
  RequireFile(args.schema, "schema");
  EnsureDirectory(args.out);

  TrainConfig config;
  config.optimizer = ParseOptimizer(args.optimizer);
  config.learning_rate = args.lr;
  config.iterations = args.iters;
  config.batch_size = args.batch;
  config.seed = args.seed;
  config.loss = ParseLossVariant(args.loss);
  ApplyAlpha(args.alpha, config);
  config.Validate();

  const DatasetSchema schema = DatasetSchema::Load(args.schema);
  const TabularDataset data = LoadDataset(args.dataset, schema);
  for (const std::string& w : data.warnings) std::cerr << "warning: " << w << '\n';
  ModelSpec spec = ModelSpecFor(data, schema.linear, args.degree);
  spec.hidden_widths = args.hidden;

  const TrainingSet all = Supervision(data);
  const SplitIndices split = Split(all.examples.size(), args.split, DeriveSeed(args.seed, {7}));
  const TrainingSet train = all.Subset(split.train);
  const TrainingSet test = all.Subset(split.test);

  json cv_info = nullptr;
  if (args.cv_iters) {
    const CvSelection cv = SelectIterationsCv(train, spec, config);
    for (const std::string& w : cv.warnings) std::cerr << "warning: " << w << '\n';
    cv_info = {{"max_iterations", config.iterations},
               {"fold_best", cv.fold_best},
               {"selected", cv.iterations}};
    config.iterations = cv.iterations;
  }

  EpochCallback progress;
  if (!args.quiet) {
    progress = [&](int epoch, const HybridModel& model) {
      if (epoch % 10 == 0 || epoch == config.iterations) {
        std::cerr << "pass " << epoch << "/" << config.iterations << " alpha=" << model.alpha()
                  << '\n';
      }
    };
  }
  const TrainResult result = Train(train, spec, config, progress);

  const json train_json = TrainConfigToJson(config);
  const json provenance = {{"config", train_json},
                           {"degree", args.degree},
                           {"hidden_widths", args.hidden},
                           {"split", args.split},
                           {"cv_iterations", args.cv_iters},
                           {"dataset_hash", data.Hash()}};
  ModelArtifact artifact{result.model, data.attributes, provenance, ConfigHash(provenance)};
  SaveArtifact((fs::path(args.out) / "model.json").string(), artifact);

  json report = {
      {"seed", args.seed},
      {"config_hash", artifact.config_hash},
      {"dataset_hash", data.Hash()},
      {"task", data.ranking ? "ranking" : "classification"},
      {"rows", data.values.rows()},
      {"rows_dropped", data.rows_dropped},
      {"attributes", data.attributes.size()},
      {"numeric_attributes", data.num_numeric()},
      {"linear_attributes", spec.linear_attrs.size()},
      {"train_examples", train.examples.size()},
      {"test_examples", test.examples.size()},
      {"iterations", result.report.iterations},
      {"final_alpha", result.report.final_alpha},
      {"alpha_recommendation", RecommendationName(InterpretAlpha(result.report.final_alpha))},
      {"loss_trace", result.report.loss_trace},
      {"cv", cv_info},
      {"warnings", data.warnings},
  };
  try {
    report["train_auc"] = ModelAuc(result.model, train);
    report["test_auc"] = ModelAuc(result.model, test);
  } catch (const EvaluationError& e) {
    report["auc_error"] = e.what();
  }
  WriteJsonFile((fs::path(args.out) / "report.json").string(), report);
  WriteJsonFile((fs::path(args.out) / "timing.json").string(),
                {{"train_seconds", result.report.seconds}});
  WriteManifest(args.out, "train", args.seed, provenance, {"model.json", "report.json", "timing.json"});

  std::cout << "alpha " << result.report.final_alpha;
  if (report.contains("test_auc")) std::cout << "  test AUC " << report["test_auc"].get<double>();
  std::cout << "\nmodel written to " << (fs::path(args.out) / "model.json").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct RankArgs {
  std::string model;
  std::string dataset;
  std::string schema;
  double eta1 = 0.45;
  double eta2 = 0.55;
  std::string out = "rank_out";
};

int RunRank(const RankArgs& args) {
  RequireFile(args.model, "model");
  RequireFile(args.dataset, "dataset");
  RequireFile(args.schema, "schema");
  const PreferenceThresholds thresholds{args.eta1, args.eta2};
  thresholds.Validate();
  EnsureDirectory(args.out);

  const ModelArtifact artifact = LoadArtifact(args.model);
  const TabularDataset data = LoadDataset(args.dataset, DatasetSchema::Load(args.schema));
  if (data.names() != artifact.model.spec().attribute_names) {
    throw SchemaError("dataset attributes do not match the model's attributes");
  }
  const std::vector<RankedAlternative> ranked = Rank(artifact.model, data.values);

  std::ostringstream csv;
  csv << "rank,alternative,score,normalized_score\n";
  for (const RankedAlternative& r : ranked) {
    csv << r.rank << ',' << r.index + 1 << ',' << Num(r.score) << ',' << Num(r.normalized_score)
        << '\n';
  }
  WriteText(fs::path(args.out) / "ranking.csv", csv.str());

  // Preference between each alternative and the next one in the ranking.
  std::ostringstream prefs;
  prefs << "first,second,probability,preference\n";
  for (std::size_t r = 0; r + 1 < ranked.size(); ++r) {
    const auto a = data.values.row(ranked[r].index);
    const auto b = data.values.row(ranked[r + 1].index);
    const double p = PairProbability(artifact.model, a, b);
    prefs << ranked[r].index + 1 << ',' << ranked[r + 1].index + 1 << ',' << Num(p) << ','
          << PreferenceName(Classify(p, thresholds)) << '\n';
  }
  WriteText(fs::path(args.out) / "preferences.csv", prefs.str());
  WriteManifest(args.out, "rank", 0,
                {{"model_config_hash", artifact.config_hash},
                 {"dataset_hash", data.Hash()},
                 {"eta1", args.eta1},
                 {"eta2", args.eta2}},
                {"ranking.csv", "preferences.csv"});
  std::cout << "ranked " << ranked.size() << " alternatives into "
            << (fs::path(args.out) / "ranking.csv").string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct ExplainArgs {
  std::string model;
  std::size_t grid = 101;
  std::string out = "explain_out";
};

int RunExplain(const ExplainArgs& args) {
  RequireFile(args.model, "model");
  EnsureDirectory(args.out);
  const ModelArtifact artifact = LoadArtifact(args.model);
  const HybridModel& model = artifact.model;
  const auto& names = model.spec().attribute_names;
  const std::vector<CurveDiagnostics> diagnostics = DiagnoseModel(model);

  std::vector<std::string> files;
  json diag = json::array();
  for (std::size_t j = 0; j < model.linear_attrs().size(); ++j) {
    const std::size_t attr = model.linear_attrs()[j];
    const MarginalCurve curve = SampleMarginalCurve(model, attr, args.grid);
    const EncodedAttribute bounds = artifact.attributes.empty()
                                        ? EncodedAttribute{names[attr], names[attr],
                                                           AttributeKind::kNumeric, 0.0, 1.0}
                                        : artifact.attributes[attr];
    std::ostringstream csv;
    csv << "x,x_normalized,value\n";
    for (std::size_t g = 0; g < curve.x.size(); ++g) {
      csv << Num(Denormalize(curve.x[g], bounds)) << ',' << Num(curve.x[g]) << ','
          << Num(curve.y[g]) << '\n';
    }
    const std::string file = CurveFileName(names[attr]);
    WriteText(fs::path(args.out) / file, csv.str());
    files.push_back(file);

    const CurveDiagnostics& d = diagnostics[j];
    json extrema = json::array();
    for (const Extremum& e : d.inflexions) {
      extrema.push_back({{"x", Denormalize(e.x, bounds)},
                         {"x_normalized", e.x},
                         {"kind", e.kind == ExtremumKind::kMinimum ? "minimum" : "maximum"}});
    }
    auto raw = [&](const std::vector<double>& xs) { return Denormalize(xs, bounds); };
    diag.push_back({{"attribute", names[attr]},
                    {"zero_crossings", raw(d.zero_crossings)},
                    {"monotonicity_inflexions", extrema},
                    {"concavity_changes", raw(d.concavity_changes)},
                    {"max_abs_value", d.max_abs},
                    {"near_zero", d.near_zero},
                    {"coefficients", curve.coefficients}});
  }

  std::ostringstream importance;
  importance << "rank,attribute,weight,normalized_weight\n";
  json importance_json = json::array();
  try {
    for (const ImportanceEntry& e : AttributeImportance(model)) {
      importance << e.rank << ',' << e.name << ',' << Num(e.weight) << ',' << Num(e.normalized)
                 << '\n';
      importance_json.push_back({{"rank", e.rank}, {"attribute", e.name}, {"normalized", e.normalized}});
    }
  } catch (const DegenerateModelError& e) {
    std::cerr << "warning: " << e.what() << '\n';
  }
  WriteText(fs::path(args.out) / "importance.csv", importance.str());
  files.push_back("importance.csv");

  const double alpha = model.alpha();
  const std::string recommendation(RecommendationName(InterpretAlpha(alpha)));
  WriteJsonFile((fs::path(args.out) / "diagnostics.json").string(),
                {{"alpha", alpha},
                 {"recommendation", recommendation},
                 {"importance", importance_json},
                 {"attributes", diag}});
  files.push_back("diagnostics.json");
  WriteManifest(args.out, "explain", 0,
                {{"model_config_hash", artifact.config_hash}, {"grid", args.grid}}, files);
  std::cout << "alpha " << alpha << ": " << recommendation << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  int id = 1;
  bool full = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int repetitions = 0;
  std::vector<std::string> families;
  std::vector<std::size_t> attributes;
  std::vector<int> degrees;
  std::vector<double> sizes;
  std::vector<int> kinds;
  std::vector<std::size_t> hidden;
  int iterations = 0;
  double lr = 0.0;
  std::string out = "experiment_out";
  bool quiet = false;
};

template <typename Config>
void ApplyTrainingOverrides(const ExperimentArgs& args, Config& config) {
  if (!args.hidden.empty()) config.hidden_widths = args.hidden;
  if (args.iterations > 0) config.train.iterations = args.iterations;
  if (args.lr > 0.0) config.train.learning_rate = args.lr;
}

std::vector<Family> ParseFamilies(const std::vector<std::string>& names) {
  std::vector<Family> out;
  for (const std::string& n : names) out.push_back(ParseFamily(n));
  return out;
}

int RunExperimentCommand(const ExperimentArgs& args) {
  EnsureDirectory(args.out);
  const fs::path dir(args.out);
  ProgressFn progress;
  if (!args.quiet) progress = [](const std::string& line) { std::cerr << line << '\n'; };

  if (args.id == 1) {
    Experiment1Config config = args.full ? Experiment1Config::Full() : Experiment1Config();
    if (args.seed_set) config.seed = args.seed;
    if (args.repetitions > 0) config.repetitions = args.repetitions;
    if (!args.families.empty()) config.families = ParseFamilies(args.families);
    if (!args.attributes.empty()) config.attributes = args.attributes;
    if (!args.degrees.empty()) config.degrees = args.degrees;
    if (!args.sizes.empty()) config.sizes = args.sizes;
    ApplyTrainingOverrides(args, config);
    const Experiment1Report report = RunExperiment1(config, progress);
    WriteJsonFile((dir / "report.json").string(), report.ToJson());
    WriteText(dir / "report.csv", report.ToCsv());
    WriteJsonFile((dir / "timing.json").string(), report.TimingJson());
    WriteManifest(args.out, "experiment 1", config.seed, report.ToJson().value("train", json()),
                  {"report.json", "report.csv", "timing.json"});
    std::size_t failures = 0;
    for (const auto& c : report.cells) failures += c.errors.size();
    std::cout << report.ToCsv();
    if (failures > 0) std::cerr << failures << " runs failed; see report.json\n";
    return 0;
  }
  if (args.id == 2) {
    Experiment2Config config = args.full ? Experiment2Config::Full() : Experiment2Config();
    if (args.seed_set) config.seed = args.seed;
    if (args.repetitions > 0) config.repetitions = args.repetitions;
    if (!args.families.empty()) config.families = ParseFamilies(args.families);
    if (!args.attributes.empty()) config.attributes = args.attributes;
    ApplyTrainingOverrides(args, config);
    const Experiment2Report report = RunExperiment2(config, progress);
    WriteJsonFile((dir / "report.json").string(), report.ToJson());
    WriteText(dir / "report.csv", report.ToCsv());
    WriteJsonFile((dir / "timing.json").string(), {{"seconds", report.seconds}});
    WriteManifest(args.out, "experiment 2", config.seed, report.ToJson().value("train", json()),
                  {"report.json", "report.csv", "timing.json"});
    std::size_t failures = 0;
    for (const auto& r : report.rows) failures += r.errors.size();
    std::cout << report.ToCsv();
    if (failures > 0) std::cerr << failures << " runs failed; see report.json\n";
    return 0;
  }
  if (args.id == 3) {
    Experiment3Config config;
    if (args.seed_set) config.seed = args.seed;
    if (args.repetitions > 0) config.repetitions = args.repetitions;
    if (args.full && args.repetitions == 0) config.repetitions = 10;
    if (!args.kinds.empty()) config.kinds = args.kinds;
    ApplyTrainingOverrides(args, config);
    const Experiment3Report report = RunExperiment3(config, progress);
    WriteJsonFile((dir / "report.json").string(), report.ToJson());
    WriteText(dir / "summary.csv", report.SummaryCsv());
    std::vector<std::string> files = {"report.json", "summary.csv"};
    for (int kind : config.kinds) {
      for (const std::string model : {"hybrid", "baseline"}) {
        for (std::size_t a = 0; a < 3; ++a) {
          const std::string file = "curves_model" + std::to_string(kind) + "_" + model + "_x" +
                                   std::to_string(a + 1) + ".csv";
          WriteText(dir / file, report.CurveCsv(kind, model, a));
          files.push_back(file);
        }
      }
    }
    WriteManifest(args.out, "experiment 3", config.seed, report.ToJson().value("train", json()),
                  files);
    std::cout << report.SummaryCsv();
    return 0;
  }
  throw ConfigError("experiment id must be 1, 2 or 3");
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string model;
  std::string dataset;
  std::string schema;
  std::string out;
};

int RunEval(const EvalArgs& args) {
  RequireFile(args.model, "model");
  RequireFile(args.dataset, "dataset");
  RequireFile(args.schema, "schema");
  const ModelArtifact artifact = LoadArtifact(args.model);
  const TabularDataset data = LoadDataset(args.dataset, DatasetSchema::Load(args.schema));
  if (data.names() != artifact.model.spec().attribute_names) {
    throw SchemaError("dataset attributes do not match the model's attributes");
  }
  const TrainingSet set = Supervision(data);
  const double auc = ModelAuc(artifact.model, set);
  const json result = {{"auc", auc},
                       {"examples", set.examples.size()},
                       {"dataset_hash", data.Hash()},
                       {"model_config_hash", artifact.config_hash},
                       {"alpha", artifact.model.alpha()}};
  if (!args.out.empty()) {
    EnsureDirectory(args.out);
    WriteJsonFile((fs::path(args.out) / "eval.json").string(), result);
  }
  std::cout << "AUC " << auc << " over " << set.examples.size() << " examples\n";
  return 0;
}

}  // namespace
}  // namespace mcda

int main(int argc, char** argv) {
  using namespace mcda;
  CLI::App app{"Hybrid additive / neural preference models: simulate, train, rank, explain"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset");
  simulate->add_option("--family", sim.family, "linear | polynomial-3 | polynomial-15")
      ->capture_default_str();
  simulate->add_option("--kind", sim.kind, "Fixed synthetic model 1-4 instead of a family");
  simulate->add_option("--n", sim.n, "Number of attributes")->capture_default_str();
  simulate->add_option("--N", sim.N, "Number of alternatives")->capture_default_str();
  simulate->add_option("--seed", sim.seed)->capture_default_str();
  simulate->add_option("--noise", sim.noise, "Noise standard deviation")->capture_default_str();
  simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train a model on a CSV dataset");
  train->add_option("--dataset", tr.dataset)->required();
  train->add_option("--schema", tr.schema, "Schema JSON")->required();
  train->add_option("--degree", tr.degree, "Polynomial degree of numeric attributes")
      ->capture_default_str();
  train->add_option("--alpha", tr.alpha, "trainable | fixed=<value>")->capture_default_str();
  train->add_option("--optimizer", tr.optimizer, "sgd | adagrad | adam")->capture_default_str();
  train->add_option("--lr", tr.lr, "Learning rate")->capture_default_str();
  train->add_option("--iters", tr.iters, "Passes over the training set (cap with --cv-iters)")
      ->capture_default_str();
  train->add_flag("--cv-iters", tr.cv_iters, "Choose the pass count by five-fold CV");
  train->add_option("--batch", tr.batch, "Minibatch size, 0 for full batch")->capture_default_str();
  train->add_option("--hidden", tr.hidden, "Hidden layer widths")->capture_default_str();
  train->add_option("--seed", tr.seed)->capture_default_str();
  train->add_option("--split", tr.split, "Training fraction")->capture_default_str();
  train->add_option("--loss", tr.loss, "mse | reg-linear | reg-balanced")->capture_default_str();
  train->add_option("--out", tr.out, "Output directory")->capture_default_str();
  train->add_flag("--quiet", tr.quiet);

  RankArgs rk;
  auto* rank = app.add_subcommand("rank", "Rank alternatives with a trained model");
  rank->add_option("--model", rk.model)->required();
  rank->add_option("--dataset", rk.dataset)->required();
  rank->add_option("--schema", rk.schema)->required();
  rank->add_option("--eta1", rk.eta1)->capture_default_str();
  rank->add_option("--eta2", rk.eta2)->capture_default_str();
  rank->add_option("--out", rk.out)->capture_default_str();

  ExplainArgs ex;
  auto* explain = app.add_subcommand("explain", "Marginal curves, diagnostics, importance");
  explain->add_option("--model", ex.model)->required();
  explain->add_option("--grid", ex.grid, "Curve grid size")->capture_default_str();
  explain->add_option("--out", ex.out)->capture_default_str();

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Run simulation experiment 1, 2 or 3");
  experiment->add_option("id", ea.id, "1, 2 or 3")->required();
  experiment->add_flag("--full", ea.full, "Full-size grid instead of the desk-scale one");
  experiment->add_option("--seed", ea.seed)->each([&](const std::string&) { ea.seed_set = true; });
  experiment->add_option("--reps", ea.repetitions, "Override the repetition count");
  experiment->add_option("--families", ea.families);
  experiment->add_option("--attributes", ea.attributes);
  experiment->add_option("--degrees", ea.degrees);
  experiment->add_option("--sizes", ea.sizes);
  experiment->add_option("--kinds", ea.kinds, "Synthetic model kinds for experiment 3");
  experiment->add_option("--hidden", ea.hidden, "Hidden layer widths");
  experiment->add_option("--iters", ea.iterations, "Pass count (the CV cap in experiment 1)");
  experiment->add_option("--lr", ea.lr, "Learning rate");
  experiment->add_option("--out", ea.out)->capture_default_str();
  experiment->add_flag("--quiet", ea.quiet);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "AUC of a trained model on a dataset");
  eval->add_option("--model", ev.model)->required();
  eval->add_option("--dataset", ev.dataset)->required();
  eval->add_option("--schema", ev.schema)->required();
  eval->add_option("--out", ev.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return RunSimulate(sim);
    if (train->parsed()) return RunTrain(tr);
    if (rank->parsed()) return RunRank(rk);
    if (explain->parsed()) return RunExplain(ex);
    if (experiment->parsed()) return RunExperimentCommand(ea);
    if (eval->parsed()) return RunEval(ev);
  } catch (const TrainingDiverged& e) {
    std::cerr << "training diverged: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
