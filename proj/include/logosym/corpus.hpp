#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logosym/image.hpp"

namespace logosym {

struct CorpusEntry {
  std::string path;                  // on-disk path, or a synthetic name
  std::optional<ImageBuffer> image;  // set for in-memory corpora
  int label = 0;
};

struct LabeledCorpus {
  std::vector<CorpusEntry> entries;
  std::vector<std::string> class_names;
  std::size_t skipped = 0;  // unreadable files ignored while loading

  std::size_t size() const { return entries.size(); }
  std::size_t classes() const { return class_names.size(); }
  std::vector<int> labels() const;
  std::vector<std::size_t> class_counts() const;

  // Decoded image of an entry (read from disk when not held in memory).
  ImageBuffer image(std::size_t i) const;
};

// One subdirectory per class; class indices follow the lexicographic order of
// the directory names. Files that do not decode as PNG/JPEG are skipped and
// counted. Throws DataError for fewer than two classes or an empty class.
LabeledCorpus load_corpus(const std::filesystem::path& root);

// Procedural three-class logo corpus ("both", "symbol", "text"), fully
// determined by the seed.
LabeledCorpus generate_synthetic(std::size_t n_per_class, std::uint64_t seed, int size = 200);

// Writes <root>/<class>/<index>.png so load_corpus reads the corpus back.
void write_corpus(const LabeledCorpus& corpus, const std::filesystem::path& root);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified seeded split: floor(fraction * n_c) samples of every class (at
// least one) go to training, the rest to testing. Throws std::invalid_argument
// for fractions outside (0, 1) and InfeasibleError for a class with fewer than
// two samples.
Split split(std::span<const int> labels, std::size_t classes, double fraction, std::uint64_t seed);

// FNV-1a over the sorted train indices; used to check that models share splits.
std::uint64_t split_hash(const Split& s);

}  // namespace logosym
