#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "logosym/corpus.hpp"
#include "logosym/imaging.hpp"
#include "logosym/matrix.hpp"

namespace logosym {

// Raw (un-normalized) feature rows of a corpus with labels and sources.
struct FeatureTable {
  Matrix features;
  std::vector<int> labels;
  std::vector<std::string> paths;
  std::vector<std::string> class_names;

  std::size_t size() const { return features.rows(); }
};

FeatureTable extract_corpus(const LabeledCorpus& corpus, const FeatureConfig& config = {});

// CSV with a header row: f1..fd, label (class name), path.
void save_features(const FeatureTable& table, const std::filesystem::path& path);

// Class indices follow the sorted class names so a table extracted from a
// directory corpus keeps its indices after a round trip.
FeatureTable load_features(const std::filesystem::path& path);

// Normalizer bounds as CSV: header feature,min,max, one row per feature.
void save_normalizer(const Normalizer& norm, const std::filesystem::path& path);
Normalizer load_normalizer(const std::filesystem::path& path);

// FNV-1a over image content (file bytes, or pixels for in-memory images),
// labels and the feature parameters.
std::uint64_t corpus_hash(const LabeledCorpus& corpus, const FeatureConfig& config);

// Returns cached features from cache_dir/features-<hash>.csv when present,
// otherwise extracts and writes the cache file.
FeatureTable cached_features(const LabeledCorpus& corpus, const FeatureConfig& config,
                             const std::filesystem::path& cache_dir);

}  // namespace logosym
