#include "logosym/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "logosym/classify.hpp"
#include "logosym/csv.hpp"
#include "logosym/errors.hpp"
#include "logosym/symbolic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace logosym {

TrialModels fit_trial(const Matrix& raw_train, std::span<const int> train_labels, std::size_t classes,
                      const KMeansOptions& kmeans, std::span<const std::string> class_names) {
  TrialModels out;
  out.normalizer = Normalizer::fit(raw_train);
  out.model.train = out.normalizer.apply(raw_train);
  out.model.train_labels.assign(train_labels.begin(), train_labels.end());
  const auto clusters = cluster_classes(out.model.train, train_labels, classes, kmeans, class_names);
  out.model.reference = reference_from_clusters(out.model.train, clusters, classes);
  out.model.reference.class_names.assign(class_names.begin(), class_names.end());
  out.model.centroids = centroids_from_clusters(clusters);
  return out;
}

namespace {

bool uses_clusters(ClassifierKind kind) { return kind != ClassifierKind::NearestNeighbor; }

struct CellAccumulator {
  std::vector<double> seconds;
  std::vector<double> comparisons;
};

void record(CellReport& cell, CellAccumulator& acc, const TimedPredictions& tp,
            std::span<const int> truth, const std::vector<std::size_t>& test_rows,
            const FeatureTable& table, std::uint64_t hash, bool first_trial) {
  const std::size_t m = table.class_names.size();
  const ConfusionMatrix cm = confusion(truth, tp.predictions, m, table.class_names);
  MetricsReport mr = metrics(cm);
  mr.avg_time_per_sample = tp.avg_seconds;
  cell.trials.push_back(std::move(mr));
  cell.split_hashes.push_back(hash);
  acc.seconds.push_back(tp.avg_seconds);
  acc.comparisons.push_back(static_cast<double>(tp.comparisons) / static_cast<double>(test_rows.size()));
  if (first_trial) {
    cell.first_trial_confusion = cm;
    for (std::size_t i = 0; i < test_rows.size(); ++i)
      if (tp.predictions[i] != truth[i])
        cell.first_trial_misclassified.push_back(
            {table.paths.empty() ? std::string() : table.paths[test_rows[i]], truth[i], tp.predictions[i]});
  }
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

ModelBest select_best(const std::vector<CellReport>& cells, ClassifierKind model,
                      const std::vector<double>& fractions) {
  ModelBest best;
  best.model = model;
  for (double f : fractions) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      if (c.model != model || c.fraction != f || c.skipped) continue;
      if (!pick || c.f_measure.avg > cells[*pick].f_measure.avg) pick = i;
    }
    if (!pick) continue;
    best.per_fraction.push_back(*pick);
    if (!best.overall || cells[*pick].f_measure.avg > cells[*best.overall].f_measure.avg)
      best.overall = *pick;
  }
  return best;
}

ExperimentReport run_sweep(const ExperimentConfig& config, const FeatureTable& table,
                           std::vector<FitRecord>* fits) {
  config.validate();
  const std::size_t m = table.class_names.size();
  if (m < 2) throw DataError("an experiment needs at least 2 classes");
  if (table.labels.size() != table.size()) throw DataError("feature table label count mismatch");

  ExperimentReport report;
  report.class_names = table.class_names;
  report.samples = table.size();
  report.config = config;

  // Cell layout: model-major, then fraction, then k.
  struct Key {
    ClassifierKind model;
    std::size_t fi, ki;
  };
  std::vector<Key> keys;
  for (auto model : config.classifiers)
    for (std::size_t fi = 0; fi < config.train_fractions.size(); ++fi) {
      if (!uses_clusters(model)) {
        keys.push_back({model, fi, 0});
        continue;
      }
      for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) keys.push_back({model, fi, ki});
    }
  auto cell_index = [&](ClassifierKind model, std::size_t fi, std::size_t ki) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i].model == model && keys[i].fi == fi && (!uses_clusters(model) || keys[i].ki == ki))
        return std::optional<std::size_t>(i);
    return std::optional<std::size_t>();
  };
  report.cells.resize(keys.size());
  std::vector<CellAccumulator> accs(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    report.cells[i].model = keys[i].model;
    report.cells[i].fraction = config.train_fractions[keys[i].fi];
    report.cells[i].k = uses_clusters(keys[i].model) ? config.k_values[keys[i].ki] : 0;
  }
  const bool any_clustered =
      std::any_of(config.classifiers.begin(), config.classifiers.end(), uses_clusters);
  const bool want_nn = std::find(config.classifiers.begin(), config.classifiers.end(),
                                 ClassifierKind::NearestNeighbor) != config.classifiers.end();

  auto skip = [&](std::size_t idx, const std::string& why) {
    report.cells[idx].skipped = true;
    if (report.cells[idx].skip_reason.empty()) report.cells[idx].skip_reason = why;
  };

  for (int t = 0; t < config.trials; ++t) {
    const std::uint64_t trial_seed = config.seed + static_cast<std::uint64_t>(t);
    for (std::size_t fi = 0; fi < config.train_fractions.size(); ++fi) {
      Split s;
      try {
        s = split(table.labels, m, config.train_fractions[fi], trial_seed);
      } catch (const InfeasibleError& e) {
        for (std::size_t i = 0; i < keys.size(); ++i)
          if (keys[i].fi == fi) skip(i, e.what());
        continue;
      }
      std::vector<std::size_t> overlap;
      std::set_intersection(s.train.begin(), s.train.end(), s.test.begin(), s.test.end(),
                            std::back_inserter(overlap));
      if (!overlap.empty()) throw std::logic_error("train and test rows overlap");
      if (fits) fits->push_back({s.train, s.test});

      const std::uint64_t hash = split_hash(s);
      const Matrix raw_train = table.features.select_rows(s.train);
      const Matrix raw_test = table.features.select_rows(s.test);
      std::vector<int> train_labels, test_labels;
      for (auto i : s.train) train_labels.push_back(table.labels[i]);
      for (auto i : s.test) test_labels.push_back(table.labels[i]);
      std::vector<std::size_t> counts(m, 0);
      for (int l : train_labels) ++counts[l];
      const std::size_t smallest = *std::min_element(counts.begin(), counts.end());

      if (want_nn) {
        const auto idx = *cell_index(ClassifierKind::NearestNeighbor, fi, 0);
        if (!report.cells[idx].skipped) {
          TrainedModel model;
          const Normalizer norm = Normalizer::fit(raw_train);
          model.train = norm.apply(raw_train);
          model.train_labels = train_labels;
          const auto tp = timed_classify(norm.apply(raw_test), model, ClassifierKind::NearestNeighbor);
          record(report.cells[idx], accs[idx], tp, test_labels, s.test, table, hash, t == 0);
        }
      }
      if (!any_clustered) continue;

      for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
        const std::size_t k = config.k_values[ki];
        if (smallest < k) {
          for (auto model : config.classifiers)
            if (uses_clusters(model))
              skip(*cell_index(model, fi, ki),
                   "a class has " + std::to_string(smallest) + " training samples, fewer than k = " +
                       std::to_string(k));
          continue;
        }
        const KMeansOptions km{k, trial_seed, config.kmeans_max_iter, config.kmeans_tol,
                                config.kmeans_restarts};
        const TrialModels fitted = fit_trial(raw_train, train_labels, m, km, table.class_names);
        const Matrix test = fitted.normalizer.apply(raw_test);
        for (auto model : config.classifiers) {
          if (!uses_clusters(model)) continue;
          const auto idx = *cell_index(model, fi, ki);
          const auto tp = timed_classify(test, fitted.model, model);
          record(report.cells[idx], accs[idx], tp, test_labels, s.test, table, hash, t == 0);
        }
      }
    }
  }

  bool any = false;
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    auto& c = report.cells[i];
    if (c.skipped) {
      c.trials.clear();
      c.split_hashes.clear();
      c.first_trial_misclassified.clear();
      c.first_trial_confusion = ConfusionMatrix();
      continue;
    }
    any = true;
    std::vector<double> a, p, r, f;
    for (const auto& mr : c.trials) {
      a.push_back(mr.accuracy);
      p.push_back(mr.precision);
      r.push_back(mr.recall);
      f.push_back(mr.f_measure);
    }
    c.accuracy = summarize(a);
    c.precision = summarize(p);
    c.recall = summarize(r);
    c.f_measure = summarize(f);
    c.avg_seconds = mean(accs[i].seconds);
    c.comparisons_per_sample = mean(accs[i].comparisons);
  }
  if (!any) throw InfeasibleError("every (fraction, k) cell is infeasible for this corpus");
  for (auto model : config.classifiers)
    report.best.push_back(select_best(report.cells, model, config.train_fractions));
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const FeatureTable& table) {
  ExperimentConfig c = config;
  c.classifiers = {ClassifierKind::Proposed};
  return run_sweep(c, table);
}

ExperimentReport compare_models(const ExperimentConfig& config, const FeatureTable& table) {
  ExperimentConfig c = config;
  c.classifiers = {ClassifierKind::Proposed, ClassifierKind::NearestNeighbor,
                   ClassifierKind::ClusterMean};
  return run_sweep(c, table);
}

FeatureTable features_for(const ExperimentConfig& config) {
  LabeledCorpus corpus;
  if (config.synthetic_per_class > 0)
    corpus = generate_synthetic(config.synthetic_per_class, config.synthetic_seed, config.features.width);
  else if (!config.corpus_dir.empty())
    corpus = load_corpus(config.corpus_dir);
  else
    throw ConfigError("config sets neither 'corpus' nor 'synthetic_per_class'");
  if (config.cache_dir.empty()) return extract_corpus(corpus, config.features);
  return cached_features(corpus, config.features, config.cache_dir);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string split_label(double fraction) {
  const int train = static_cast<int>(std::lround(fraction * 100.0));
  return std::to_string(train) + "-" + std::to_string(100 - train);
}

std::string model_title(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Proposed: return "Symbolic + Clustering (proposed)";
    case ClassifierKind::NearestNeighbor: return "Conventional 1-NN (model-1)";
    case ClassifierKind::ClusterMean: return "Conventional + Clustering (model-2)";
  }
  return "";
}

json summary_json(const Summary& s) { return {{"min", s.min}, {"max", s.max}, {"avg", s.avg}}; }

json cell_json(const CellReport& c) {
  json j;
  j["model"] = to_string(c.model);
  j["fraction"] = c.fraction;
  j["k"] = c.k;
  j["skipped"] = c.skipped;
  if (c.skipped) {
    j["skip_reason"] = c.skip_reason;
    return j;
  }
  j["accuracy"] = summary_json(c.accuracy);
  j["precision"] = summary_json(c.precision);
  j["recall"] = summary_json(c.recall);
  j["f_measure"] = summary_json(c.f_measure);
  j["comparisons_per_sample"] = c.comparisons_per_sample;
  json trials = json::array();
  for (const auto& mr : c.trials)
    trials.push_back({{"accuracy", mr.accuracy},
                      {"precision", mr.precision},
                      {"recall", mr.recall},
                      {"f_measure", mr.f_measure},
                      {"class_precision", mr.class_precision},
                      {"class_recall", mr.class_recall},
                      {"undefined_precision", mr.undefined_precision},
                      {"undefined_recall", mr.undefined_recall}});
  j["trials"] = trials;
  json hashes = json::array();
  for (auto h : c.split_hashes) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    hashes.push_back(buf);
  }
  j["split_hashes"] = hashes;
  json cm = json::array();
  for (std::size_t r = 0; r < c.first_trial_confusion.classes(); ++r) {
    json row = json::array();
    for (std::size_t col = 0; col < c.first_trial_confusion.classes(); ++col)
      row.push_back(c.first_trial_confusion.at(r, col));
    cm.push_back(row);
  }
  j["first_trial_confusion"] = cm;
  return j;
}

void metric_row(std::ostringstream& os, const CellReport& c) {
  for (const Summary* s : {&c.accuracy, &c.precision, &c.recall, &c.f_measure})
    os << ' ' << std::setw(7) << fmt2(s->min) << std::setw(7) << fmt2(s->max) << std::setw(7)
       << fmt2(s->avg) << " |";
}

}  // namespace

std::string report_json(const ExperimentReport& report) {
  json j;
  const auto& cfg = report.config;
  j["config"] = {{"train_fractions", cfg.train_fractions},
                 {"k_values", cfg.k_values},
                 {"trials", cfg.trials},
                 {"seed", cfg.seed},
                 {"kmeans_max_iter", cfg.kmeans_max_iter},
                 {"kmeans_restarts", cfg.kmeans_restarts},
                 {"kmeans_tol", cfg.kmeans_tol},
                 {"width", cfg.features.width},
                 {"height", cfg.features.height},
                 {"grid_cols", cfg.features.grid_cols},
                 {"grid_rows", cfg.features.grid_rows},
                 {"texture_sigma", cfg.features.texture_sigma},
                 {"texture_kernel", cfg.features.texture_kernel}};
  json orders = json::array();
  for (const auto& z : cfg.features.zernike_orders) orders.push_back({z.n, z.m});
  j["config"]["zernike_orders"] = orders;
  j["class_names"] = report.class_names;
  j["samples"] = report.samples;
  json cells = json::array();
  for (const auto& c : report.cells) cells.push_back(cell_json(c));
  j["cells"] = cells;
  json best = json::array();
  for (const auto& b : report.best) {
    json jb;
    jb["model"] = to_string(b.model);
    json rows = json::array();
    for (auto idx : b.per_fraction)
      rows.push_back({{"cell", idx},
                      {"fraction", report.cells[idx].fraction},
                      {"k", report.cells[idx].k},
                      {"f_measure_avg", report.cells[idx].f_measure.avg}});
    jb["per_fraction"] = rows;
    if (b.overall) {
      const auto& c = report.cells[*b.overall];
      jb["overall"] = {{"cell", *b.overall},
                       {"fraction", c.fraction},
                       {"k", c.k},
                       {"accuracy", summary_json(c.accuracy)},
                       {"precision", summary_json(c.precision)},
                       {"recall", summary_json(c.recall)},
                       {"f_measure", summary_json(c.f_measure)}};
    }
    best.push_back(jb);
  }
  j["best"] = best;
  return j.dump(2) + "\n";
}

std::string report_text(const ExperimentReport& report) {
  std::ostringstream os;
  os << "Classes: ";
  for (std::size_t i = 0; i < report.class_names.size(); ++i)
    os << (i ? ", " : "") << report.class_names[i];
  os << "   samples: " << report.samples << "   trials: " << report.config.trials
     << "   seed: " << report.config.seed << "\n\n";

  for (const auto& b : report.best) {
    os << "== " << model_title(b.model) << " ==\n";
    os << "Train-Test % |       Accuracy        |       Precision       |"
          "        Recall         |       F-Measure       | Cluster #\n";
    os << "             |    Min    Max    Avg |    Min    Max    Avg |"
          "    Min    Max    Avg |    Min    Max    Avg |\n";
    for (auto idx : b.per_fraction) {
      const auto& c = report.cells[idx];
      os << std::left << std::setw(12) << split_label(c.fraction) << std::right << " |";
      metric_row(os, c);
      os << ' ' << (c.k ? std::to_string(c.k) : "-") << '\n';
    }
    if (b.overall) {
      const auto& c = report.cells[*b.overall];
      os << std::left << std::setw(12) << "Best" << std::right << " |";
      metric_row(os, c);
      os << ' ' << (c.k ? std::to_string(c.k) : "-") << '\n';
    }
    for (const auto& c : report.cells)
      if (c.model == b.model && c.skipped)
        os << "  skipped " << split_label(c.fraction) << " k=" << c.k << ": " << c.skip_reason << '\n';
    os << '\n';
  }

  os << "== Best results per model (Min / Max / Avg) ==\n";
  for (const auto& b : report.best) {
    if (!b.overall) continue;
    const auto& c = report.cells[*b.overall];
    os << model_title(b.model) << "   Cluster #: " << (c.k ? std::to_string(c.k) : "-")
       << "   Train-Test %: " << split_label(c.fraction) << '\n';
    const std::pair<const char*, const Summary*> rows[] = {{"Accuracy", &c.accuracy},
                                                           {"Precision", &c.precision},
                                                           {"Recall", &c.recall},
                                                           {"F-Measure", &c.f_measure}};
    for (const auto& [name, s] : rows)
      os << "  " << std::left << std::setw(10) << name << std::right << std::setw(8) << fmt2(s->min)
         << std::setw(8) << fmt2(s->max) << std::setw(8) << fmt2(s->avg) << '\n';
  }
  os << '\n';

  for (const auto& b : report.best) {
    if (!b.overall) continue;
    const auto& c = report.cells[*b.overall];
    const auto& cm = c.first_trial_confusion;
    os << "Confusion matrix, " << model_title(b.model);
    if (c.k) os << ", cluster #" << c.k;
    const int train = static_cast<int>(std::lround(c.fraction * 100.0));
    os << " (" << train << "%-" << 100 - train << "%), trial 1\n";
    os << std::setw(18) << "";
    for (const auto& n : report.class_names) os << std::setw(10) << n;
    os << '\n';
    for (std::size_t r = 0; r < cm.classes(); ++r) {
      const std::string label = report.class_names[r] + " (" + std::to_string(cm.row_sum(r)) + ")";
      os << std::left << std::setw(18) << label << std::right;
      for (std::size_t col = 0; col < cm.classes(); ++col) os << std::setw(10) << cm.at(r, col);
      os << '\n';
    }
    os << '\n';
  }
  return os.str();
}

std::string timing_text(const ExperimentReport& report) {
  std::ostringstream os;
  os << "Per-sample classification time at each model's best k (seconds, mean over trials)\n";
  os << std::left << std::setw(38) << "Model" << std::right;
  for (double f : report.config.train_fractions) os << std::setw(13) << split_label(f);
  os << std::setw(16) << "comparisons" << '\n';
  for (const auto& b : report.best) {
    os << std::left << std::setw(38) << model_title(b.model) << std::right;
    double comparisons = 0.0;
    for (double f : report.config.train_fractions) {
      auto it = std::find_if(b.per_fraction.begin(), b.per_fraction.end(),
                             [&](std::size_t i) { return report.cells[i].fraction == f; });
      if (it == b.per_fraction.end()) {
        os << std::setw(13) << "-";
        continue;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3e", report.cells[*it].avg_seconds);
      os << std::setw(13) << buf;
    }
    if (b.overall) comparisons = report.cells[*b.overall].comparisons_per_sample;
    os << std::setw(16) << fmt2(comparisons) << '\n';
  }
  return os.str();
}

void write_report(const ExperimentReport& report, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out) throw DataError("cannot write " + (out_dir / name).string());
    out << content;
  };
  write("report.json", report_json(report));
  write("report.txt", report_text(report));

  std::ostringstream grid;
  csv::write_row(grid, {"model", "fraction", "k", "skipped", "acc_min", "acc_max", "acc_avg",
                        "prec_min", "prec_max", "prec_avg", "rec_min", "rec_max", "rec_avg", "f_min",
                        "f_max", "f_avg", "comparisons_per_sample"});
  for (const auto& c : report.cells) {
    std::vector<std::string> row{to_string(c.model), csv::format_double(c.fraction),
                                 std::to_string(c.k), c.skipped ? "1" : "0"};
    for (const Summary* s : {&c.accuracy, &c.precision, &c.recall, &c.f_measure}) {
      row.push_back(csv::format_double(s->min));
      row.push_back(csv::format_double(s->max));
      row.push_back(csv::format_double(s->avg));
    }
    row.push_back(csv::format_double(c.comparisons_per_sample));
    csv::write_row(grid, row);
  }
  write("grid.csv", grid.str());

  std::ostringstream mis;
  csv::write_row(mis, {"model", "fraction", "k", "path", "true", "predicted"});
  for (const auto& b : report.best) {
    if (!b.overall) continue;
    const auto& c = report.cells[*b.overall];
    for (const auto& e : c.first_trial_misclassified)
      csv::write_row(mis, {to_string(c.model), csv::format_double(c.fraction), std::to_string(c.k), e.path,
                           report.class_names[e.truth], report.class_names[e.predicted]});
  }
  write("misclassified.csv", mis.str());

  json timing = json::array();
  for (const auto& c : report.cells) {
    if (c.skipped) continue;
    timing.push_back({{"model", to_string(c.model)},
                      {"fraction", c.fraction},
                      {"k", c.k},
                      {"avg_seconds_per_sample", c.avg_seconds},
                      {"comparisons_per_sample", c.comparisons_per_sample}});
  }
  write("timing.json", timing.dump(2) + "\n");
  write("timing.txt", timing_text(report));
}

}  // namespace logosym
