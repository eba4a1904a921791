#include "logosym/features.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>

#include "logosym/csv.hpp"
#include "logosym/errors.hpp"

namespace fs = std::filesystem;

namespace logosym {

FeatureTable extract_corpus(const LabeledCorpus& corpus, const FeatureConfig& config) {
  config.validate();
  FeatureTable t;
  t.class_names = corpus.class_names;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    t.features.append_row(extract_image(corpus.image(i), config));
    t.labels.push_back(corpus.entries[i].label);
    t.paths.push_back(corpus.entries[i].path);
  }
  return t;
}

void save_features(const FeatureTable& table, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write feature file " + path.string());
  std::vector<std::string> header;
  for (std::size_t c = 1; c <= table.features.cols(); ++c) header.push_back("f" + std::to_string(c));
  header.push_back("label");
  header.push_back("path");
  csv::write_row(out, header);
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::vector<std::string> row;
    for (double v : table.features.row(r)) row.push_back(csv::format_double(v));
    row.push_back(table.class_names.at(table.labels[r]));
    row.push_back(table.paths[r]);
    csv::write_row(out, row);
  }
  if (!out) throw DataError("failed writing feature file " + path.string());
}

FeatureTable load_features(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open feature file " + path.string());
  std::vector<std::string> fields;
  if (!csv::next_record(in, fields) || fields.size() < 3 || fields[fields.size() - 2] != "label" ||
      fields.back() != "path")
    throw DataError("feature file " + path.string() + " lacks the f1..fd,label,path header");
  const std::size_t d = fields.size() - 2;
  std::vector<std::string> names;
  std::vector<std::string> raw_labels;
  FeatureTable t;
  std::size_t line = 1;
  while (csv::next_record(in, fields)) {
    ++line;
    if (fields.size() != d + 2)
      throw DataError("feature file line " + std::to_string(line) + ": expected " +
                      std::to_string(d + 2) + " columns");
    std::vector<double> row(d);
    for (std::size_t c = 0; c < d; ++c) row[c] = csv::parse_double(fields[c]);
    t.features.append_row(row);
    raw_labels.push_back(fields[d]);
    t.paths.push_back(fields[d + 1]);
  }
  names = raw_labels;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  t.class_names = names;
  for (const auto& l : raw_labels)
    t.labels.push_back(static_cast<int>(std::lower_bound(names.begin(), names.end(), l) - names.begin()));
  return t;
}

void save_normalizer(const Normalizer& norm, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write normalizer file " + path.string());
  csv::write_row(out, {"feature", "min", "max"});
  for (std::size_t i = 0; i < norm.dimension(); ++i)
    csv::write_row(out, {"f" + std::to_string(i + 1), csv::format_double(norm.mins()[i]),
                         csv::format_double(norm.maxs()[i])});
  if (!out) throw DataError("failed writing normalizer file " + path.string());
}

Normalizer load_normalizer(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open normalizer file " + path.string());
  std::vector<std::string> fields;
  if (!csv::next_record(in, fields) || fields != std::vector<std::string>{"feature", "min", "max"})
    throw DataError("normalizer file " + path.string() + " lacks the feature,min,max header");
  std::vector<double> mins, maxs;
  while (csv::next_record(in, fields)) {
    if (fields.size() != 3) throw DataError("normalizer file " + path.string() + ": expected 3 columns");
    mins.push_back(csv::parse_double(fields[1]));
    maxs.push_back(csv::parse_double(fields[2]));
    if (maxs.back() < mins.back()) throw DataError("normalizer file " + path.string() + ": max below min");
  }
  if (mins.empty()) throw DataError("normalizer file " + path.string() + " is empty");
  return Normalizer(std::move(mins), std::move(maxs));
}

namespace {

struct Fnv {
  std::uint64_t h = 0xcbf29ce484222325ull;
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ull;
    }
  }
  template <typename T>
  void value(const T& v) {
    bytes(&v, sizeof v);
  }
  void text(const std::string& s) {
    value(s.size());
    bytes(s.data(), s.size());
  }
};

}  // namespace

std::uint64_t corpus_hash(const LabeledCorpus& corpus, const FeatureConfig& config) {
  Fnv f;
  f.value(config.width);
  f.value(config.height);
  f.value(config.grid_cols);
  f.value(config.grid_rows);
  f.value(config.texture_sigma);
  f.value(config.texture_kernel);
  for (const auto& z : config.zernike_orders) {
    f.value(z.n);
    f.value(z.m);
  }
  for (const auto& name : corpus.class_names) f.text(name);
  for (const auto& e : corpus.entries) {
    f.value(e.label);
    f.text(e.path);
    if (e.image) {
      f.value(e.image->width);
      f.value(e.image->height);
      f.value(e.image->channels);
      f.bytes(e.image->pixels.data(), e.image->pixels.size());
    } else {
      std::ifstream in(e.path, std::ios::binary);
      const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      f.text(content);
    }
  }
  return f.h;
}

FeatureTable cached_features(const LabeledCorpus& corpus, const FeatureConfig& config,
                             const fs::path& cache_dir) {
  char name[40];
  std::snprintf(name, sizeof name, "features-%016llx.csv",
                static_cast<unsigned long long>(corpus_hash(corpus, config)));
  const fs::path file = cache_dir / name;
  if (fs::exists(file)) {
    FeatureTable t = load_features(file);
    // Sorted-name indices from the file must agree with the corpus indices.
    if (t.size() == corpus.size() && t.class_names == corpus.class_names) return t;
  }
  FeatureTable t = extract_corpus(corpus, config);
  fs::create_directories(cache_dir);
  save_features(t, file);
  return t;
}

}  // namespace logosym
