// logosym command line: feature extraction, training, classification,
// experiment sweeps and synthetic corpus generation.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "logosym/classify.hpp"
#include "logosym/corpus.hpp"
#include "logosym/errors.hpp"
#include "logosym/experiment.hpp"
#include "logosym/features.hpp"
#include "logosym/symbolic.hpp"

using namespace logosym;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInfeasible = 3 };

fs::path normalizer_path(const fs::path& model) { return fs::path(model.string() + ".norm.csv"); }

FeatureConfig feature_config(const std::string& config_path) {
  return config_path.empty() ? FeatureConfig{} : load_config(config_path).features;
}

int cmd_extract(const std::string& corpus_dir, const std::string& out, const std::string& config_path) {
  const auto cfg = feature_config(config_path);
  const auto corpus = load_corpus(corpus_dir);
  const auto table = extract_corpus(corpus, cfg);
  save_features(table, out);
  std::fprintf(stderr, "extracted %zu x %zu features from %zu classes (%zu files skipped)\n", table.size(),
               table.features.cols(), table.class_names.size(), corpus.skipped);
  return kOk;
}

int cmd_train(const std::string& features, std::size_t k, std::uint64_t seed, int restarts,
              const std::string& out) {
  const auto table = load_features(features);
  if (table.size() == 0) throw DataError("feature file has no rows");
  KMeansOptions opt;
  opt.k = k;
  opt.seed = seed;
  opt.restarts = restarts;
  const auto fit = fit_trial(table.features, table.labels, table.class_names.size(), opt, table.class_names);
  save_reference(fit.model.reference, out);
  save_normalizer(fit.normalizer, normalizer_path(out));
  std::fprintf(stderr, "reference matrix: %zu representatives x %zu features\n", fit.model.reference.size(),
               fit.model.reference.dimension);
  return kOk;
}

int cmd_classify(const std::string& model, const std::vector<std::string>& images, const std::string& config_path) {
  const auto cfg = feature_config(config_path);
  const auto ref = load_reference(model);
  const auto norm = load_normalizer(normalizer_path(model));
  if (norm.dimension() != ref.dimension || cfg.feature_count() != ref.dimension)
    throw DataError("model dimension does not match the feature configuration");
  int status = kOk;
  for (const auto& path : images) {
    nlohmann::ordered_json line;
    line["image"] = path;
    try {
      const auto v = norm.apply(extract_image(read_image(path), cfg));
      const auto out = classify(v, ref);
      line["class"] = ref.class_names.empty() ? std::to_string(out.predicted_class)
                                              : ref.class_names.at(out.predicted_class);
      line["class_index"] = out.predicted_class;
      line["cluster"] = out.best_cluster;
      line["acceptance"] = out.max_count;
      line["tie"] = out.tie;
      line["no_coverage"] = out.no_coverage;
    } catch (const InvalidImage& e) {
      line["error"] = e.what();
      status = kData;
    }
    std::cout << line.dump() << '\n';
  }
  return status;
}

int cmd_sweep(const std::string& config_path, const std::string& out, bool compare) {
  auto cfg = load_config(config_path);
  if (!compare) cfg.classifiers = {ClassifierKind::Proposed};
  const auto table = features_for(cfg);
  const auto report = compare ? compare_models(cfg, table) : run_experiment(cfg, table);
  write_report(report, out);
  std::cout << report_text(report) << '\n' << timing_text(report);
  return kOk;
}

int cmd_synth(std::size_t n, std::uint64_t seed, int size, const std::string& out) {
  const auto corpus = generate_synthetic(n, seed, size);
  write_corpus(corpus, out);
  std::fprintf(stderr, "wrote %zu images in %zu classes to %s\n", corpus.size(), corpus.classes(), out.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logo classification with clustered symbolic interval representatives"};
  app.require_subcommand(1);

  std::string corpus, out, features, model, config;
  std::size_t k = 4, n = 60;
  std::uint64_t seed = 0;
  int restarts = 10, size = 200;
  std::vector<std::string> images;

  auto* extract = app.add_subcommand("extract", "Extract features of a class-per-directory corpus");
  extract->add_option("--corpus", corpus, "Corpus root (one subdirectory per class)")->required();
  extract->add_option("--out", out, "Output features CSV")->required();
  extract->add_option("--config", config, "Config file for feature parameters");

  auto* train = app.add_subcommand("train", "Build a reference matrix from a features CSV");
  train->add_option("--features", features, "Features CSV")->required();
  train->add_option("--k", k, "Clusters per class")->required()->check(CLI::PositiveNumber);
  train->add_option("--seed", seed, "Random seed")->required();
  train->add_option("--restarts", restarts, "k-means restarts")->check(CLI::PositiveNumber);
  train->add_option("--out", out, "Output model CSV (normalizer goes to <out>.norm.csv)")->required();

  auto* cls = app.add_subcommand("classify", "Classify images with a trained model (JSON lines)");
  cls->add_option("--model", model, "Model CSV")->required();
  cls->add_option("--config", config, "Config file for feature parameters");
  cls->add_option("images", images, "Images")->required();

  auto* experiment = app.add_subcommand("experiment", "Sweep the proposed model over fractions and k");
  experiment->add_option("--config", config, "Config file")->required();
  experiment->add_option("--out", out, "Report directory")->required();

  auto* compare = app.add_subcommand("compare", "Compare the proposed model with Model-1 and Model-2");
  compare->add_option("--config", config, "Config file")->required();
  compare->add_option("--out", out, "Report directory")->required();

  auto* synth = app.add_subcommand("synth", "Write a synthetic three-class logo corpus");
  synth->add_option("--n", n, "Images per class")->required()->check(CLI::PositiveNumber);
  synth->add_option("--seed", seed, "Random seed")->required();
  synth->add_option("--size", size, "Image side in pixels")->check(CLI::Range(8, 4096));
  synth->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*extract) return cmd_extract(corpus, out, config);
    if (*train) return cmd_train(features, k, seed, restarts, out);
    if (*cls) return cmd_classify(model, images, config);
    if (*experiment) return cmd_sweep(config, out, false);
    if (*compare) return cmd_sweep(config, out, true);
    if (*synth) return cmd_synth(n, seed, size, out);
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasible;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kData;
  }
  return kUsage;
}
