#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "logosym/clustering.hpp"
#include "logosym/corpus.hpp"
#include "logosym/eval.hpp"
#include "logosym/features.hpp"
#include "logosym/imaging.hpp"

namespace logosym {

struct ExperimentConfig {
  FeatureConfig features;
  std::vector<double> train_fractions{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::vector<std::size_t> k_values{2, 3, 4, 5, 6, 7, 8, 9, 10};
  int trials = 20;
  std::uint64_t seed = 0;
  int kmeans_max_iter = 100;
  int kmeans_restarts = 10;
  double kmeans_tol = 1e-6;
  std::vector<ClassifierKind> classifiers{ClassifierKind::Proposed, ClassifierKind::NearestNeighbor,
                                          ClassifierKind::ClusterMean};

  // Corpus source: a class-per-directory tree, or a synthetic corpus when
  // synthetic_per_class > 0.
  std::string corpus_dir;
  std::size_t synthetic_per_class = 0;
  std::uint64_t synthetic_seed = 1;
  std::string cache_dir;  // empty: no feature cache

  void validate() const;
};

// Plain-text "key = value" lines; '#' starts a comment. Unknown keys are an
// error. See README for the key list.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct Misclassification {
  std::string path;
  int truth = 0;
  int predicted = 0;
};

// One (model, fraction, k) cell aggregated over trials. Model-1 cells have
// k = 0 because the nearest-neighbour baseline does not cluster.
struct CellReport {
  ClassifierKind model = ClassifierKind::Proposed;
  double fraction = 0.0;
  std::size_t k = 0;
  bool skipped = false;
  std::string skip_reason;
  std::vector<MetricsReport> trials;
  Summary accuracy, precision, recall, f_measure;
  double comparisons_per_sample = 0.0;
  double avg_seconds = 0.0;  // per test sample, mean over trials
  std::vector<std::uint64_t> split_hashes;
  ConfusionMatrix first_trial_confusion;
  std::vector<Misclassification> first_trial_misclassified;
};

struct ModelBest {
  ClassifierKind model = ClassifierKind::Proposed;
  std::vector<std::size_t> per_fraction;  // cell index of the best k per fraction
  std::optional<std::size_t> overall;     // cell index of the overall best row
};

struct ExperimentReport {
  std::vector<std::string> class_names;
  std::size_t samples = 0;
  ExperimentConfig config;
  std::vector<CellReport> cells;
  std::vector<ModelBest> best;
};

// Tallies of the data each fitting step was given; used to show that only
// training rows reach the normalizer, k-means and the reference matrix.
struct FitRecord {
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

struct TrialModels {
  Normalizer normalizer;
  TrainedModel model;
};

// Fits the normalizer and all three classifiers from training rows alone.
TrialModels fit_trial(const Matrix& raw_train, std::span<const int> train_labels, std::size_t classes,
                      const KMeansOptions& kmeans, std::span<const std::string> class_names = {});

// The sweep over fractions x k x trials for the configured classifiers.
// Trial t uses seed + t for its split and k-means runs. Infeasible cells are
// marked skipped; if every cell is infeasible an InfeasibleError is thrown.
ExperimentReport run_sweep(const ExperimentConfig& config, const FeatureTable& table,
                           std::vector<FitRecord>* fits = nullptr);

// The proposed classifier alone.
ExperimentReport run_experiment(const ExperimentConfig& config, const FeatureTable& table);

// Proposed, Model-1 and Model-2 on identical splits.
ExperimentReport compare_models(const ExperimentConfig& config, const FeatureTable& table);

// Loads or generates the configured corpus and extracts (or reads cached)
// features.
FeatureTable features_for(const ExperimentConfig& config);

// Best-by-average-F selection within one model's cells.
ModelBest select_best(const std::vector<CellReport>& cells, ClassifierKind model,
                      const std::vector<double>& fractions);

// Writes report.json, report.txt, grid.csv and misclassified.csv (all
// deterministic for a fixed seed) plus timing.json and timing.txt.
void write_report(const ExperimentReport& report, const std::filesystem::path& out_dir);

std::string report_json(const ExperimentReport& report);
std::string report_text(const ExperimentReport& report);
std::string timing_text(const ExperimentReport& report);

}  // namespace logosym
