#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "logosym/csv.hpp"
#include "logosym/errors.hpp"
#include "logosym/experiment.hpp"

namespace logosym {

void ExperimentConfig::validate() const {
  features.validate();
  if (train_fractions.empty()) throw ConfigError("train_fractions is empty");
  for (double f : train_fractions)
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("train fractions must lie in (0, 1)");
  if (k_values.empty()) throw ConfigError("k_values is empty");
  for (auto k : k_values)
    if (k < 1) throw ConfigError("k values must be at least 1");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (kmeans_max_iter < 1) throw ConfigError("kmeans_max_iter must be at least 1");
  if (kmeans_restarts < 1) throw ConfigError("kmeans_restarts must be at least 1");
  if (!(kmeans_tol >= 0.0)) throw ConfigError("kmeans_tol must be non-negative");
  if (classifiers.empty()) throw ConfigError("no classifiers selected");
}

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> items(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

double to_real(const std::string& key, const std::string& v) {
  try {
    return csv::parse_double(v);
  } catch (const DataError&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

std::vector<std::size_t> k_list(const std::string& key, const std::string& value) {
  std::vector<std::size_t> out;
  for (const auto& item : items(value)) {
    const auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      const long long lo = to_int(key, trim(item.substr(0, dash)));
      const long long hi = to_int(key, trim(item.substr(dash + 1)));
      if (lo < 1 || hi < lo) throw ConfigError("config key '" + key + "': bad range " + item);
      for (long long k = lo; k <= hi; ++k) out.push_back(static_cast<std::size_t>(k));
    } else {
      const long long k = to_int(key, item);
      if (k < 1) throw ConfigError("config key '" + key + "': k must be >= 1");
      out.push_back(static_cast<std::size_t>(k));
    }
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "width") cfg.features.width = static_cast<int>(to_int(key, value));
    else if (key == "height") cfg.features.height = static_cast<int>(to_int(key, value));
    else if (key == "grid_cols") cfg.features.grid_cols = static_cast<int>(to_int(key, value));
    else if (key == "grid_rows") cfg.features.grid_rows = static_cast<int>(to_int(key, value));
    else if (key == "texture_sigma") cfg.features.texture_sigma = to_real(key, value);
    else if (key == "texture_kernel") cfg.features.texture_kernel = static_cast<int>(to_int(key, value));
    else if (key == "zernike_orders") {
      cfg.features.zernike_orders.clear();
      for (const auto& item : items(value)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw ConfigError("zernike_orders entries look like n:m, got '" + item + "'");
        cfg.features.zernike_orders.push_back(
            {static_cast<int>(to_int(key, trim(item.substr(0, colon)))),
             static_cast<int>(to_int(key, trim(item.substr(colon + 1))))});
      }
    } else if (key == "kmeans_restarts") cfg.kmeans_restarts = static_cast<int>(to_int(key, value));
    else if (key == "kmeans_max_iter") cfg.kmeans_max_iter = static_cast<int>(to_int(key, value));
    else if (key == "kmeans_tol") cfg.kmeans_tol = to_real(key, value);
    else if (key == "train_fractions") {
      cfg.train_fractions.clear();
      for (const auto& item : items(value)) cfg.train_fractions.push_back(to_real(key, item));
    } else if (key == "k_values") cfg.k_values = k_list(key, value);
    else if (key == "trials") cfg.trials = static_cast<int>(to_int(key, value));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "classifiers") {
      cfg.classifiers.clear();
      for (const auto& item : items(value)) {
        if (item == "proposed") cfg.classifiers.push_back(ClassifierKind::Proposed);
        else if (item == "model1") cfg.classifiers.push_back(ClassifierKind::NearestNeighbor);
        else if (item == "model2") cfg.classifiers.push_back(ClassifierKind::ClusterMean);
        else throw ConfigError("unknown classifier '" + item + "' (proposed, model1, model2)");
      }
    } else if (key == "corpus") cfg.corpus_dir = value;
    else if (key == "synthetic_per_class")
      cfg.synthetic_per_class = static_cast<std::size_t>(to_int(key, value));
    else if (key == "synthetic_seed") cfg.synthetic_seed = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "cache_dir") cfg.cache_dir = value;
    else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig cfg = parse_config(ss.str());
  // Relative paths are taken relative to the config file.
  const auto base = path.parent_path();
  if (!cfg.corpus_dir.empty() && std::filesystem::path(cfg.corpus_dir).is_relative())
    cfg.corpus_dir = (base / cfg.corpus_dir).string();
  if (!cfg.cache_dir.empty() && std::filesystem::path(cfg.cache_dir).is_relative())
    cfg.cache_dir = (base / cfg.cache_dir).string();
  return cfg;
}

}  // namespace logosym
