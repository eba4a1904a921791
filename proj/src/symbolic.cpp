#include "logosym/symbolic.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "logosym/csv.hpp"
#include "logosym/errors.hpp"

namespace logosym {

void ReferenceMatrix::validate() const {
  if (representatives.size() != classes * clusters_per_class)
    throw DataError("reference matrix holds " + std::to_string(representatives.size()) +
                    " representatives, expected k*m = " +
                    std::to_string(classes * clusters_per_class));
  std::vector<std::size_t> per_class(classes, 0);
  for (const auto& rep : representatives) {
    if (rep.class_label < 0 || static_cast<std::size_t>(rep.class_label) >= classes)
      throw DataError("representative class label out of range");
    ++per_class[rep.class_label];
    if (rep.dimension() != dimension) throw DataError("representative dimension mismatch");
    for (const auto& iv : rep.intervals)
      if (!(iv.lo <= iv.hi)) throw DataError("interval with lower bound above upper bound");
  }
  for (std::size_t c = 0; c < classes; ++c)
    if (per_class[c] != clusters_per_class)
      throw DataError("class " + std::to_string(c) + " does not contribute exactly k representatives");
}

ClusterStats cluster_stats(const Matrix& samples) {
  if (samples.empty()) throw std::invalid_argument("cluster_stats: no samples");
  const std::size_t n = samples.rows();
  const std::size_t d = samples.cols();
  ClusterStats st{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < d; ++l) st.mean[l] += samples(i, l);
  for (double& m : st.mean) m /= static_cast<double>(n);
  if (n == 1) return st;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < d; ++l) {
      const double dev = samples(i, l) - st.mean[l];
      st.std[l] += dev * dev;
    }
  for (double& s : st.std) s = std::sqrt(s / static_cast<double>(n - 1));
  return st;
}

ClusterRepresentative make_representative(const Matrix& samples, int class_label,
                                          std::size_t cluster_index) {
  const ClusterStats st = cluster_stats(samples);
  ClusterRepresentative rep;
  rep.class_label = class_label;
  rep.cluster_index = cluster_index;
  rep.support = samples.rows();
  rep.intervals.reserve(st.mean.size());
  for (std::size_t l = 0; l < st.mean.size(); ++l)
    rep.intervals.push_back({st.mean[l] - st.std[l], st.mean[l] + st.std[l]});
  return rep;
}

std::uint64_t class_seed(std::uint64_t seed, int class_label) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(class_label) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<ClassClustering> cluster_classes(const Matrix& train, std::span<const int> labels,
                                             std::size_t classes, const KMeansOptions& options,
                                             std::span<const std::string> class_names) {
  if (labels.size() != train.rows())
    throw std::invalid_argument("cluster_classes: label count does not match sample count");
  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= classes)
      throw std::invalid_argument("cluster_classes: label out of range");
    members[labels[i]].push_back(i);
  }
  std::vector<ClassClustering> out;
  out.reserve(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    if (members[c].size() < options.k) {
      const std::string name =
          c < class_names.size() ? class_names[c] : "#" + std::to_string(c);
      throw InfeasibleError("class '" + name + "' has " + std::to_string(members[c].size()) +
                            " training samples, fewer than k = " + std::to_string(options.k));
    }
    KMeansOptions opt = options;
    opt.seed = class_seed(options.seed, static_cast<int>(c));
    ClassClustering cc;
    cc.class_label = static_cast<int>(c);
    cc.rows = members[c];
    cc.result = kmeans(train.select_rows(cc.rows), opt);
    out.push_back(std::move(cc));
  }
  return out;
}

ReferenceMatrix reference_from_clusters(const Matrix& train,
                                        const std::vector<ClassClustering>& clusters,
                                        std::size_t classes) {
  ReferenceMatrix ref;
  ref.dimension = train.cols();
  ref.classes = classes;
  ref.clusters_per_class = clusters.empty() ? 0 : clusters.front().result.centroids.rows();
  for (const auto& cc : clusters) {
    const std::size_t k = cc.result.centroids.rows();
    std::vector<std::vector<std::size_t>> groups(k);
    for (std::size_t i = 0; i < cc.rows.size(); ++i)
      groups[cc.result.assignments[i]].push_back(cc.rows[i]);
    for (std::size_t j = 0; j < k; ++j)
      ref.representatives.push_back(
          make_representative(train.select_rows(groups[j]), cc.class_label, j));
  }
  return ref;
}

ReferenceMatrix build_reference(const Matrix& train, std::span<const int> labels,
                                std::size_t classes, const KMeansOptions& options,
                                std::span<const std::string> class_names) {
  const auto clusters = cluster_classes(train, labels, classes, options, class_names);
  ReferenceMatrix ref = reference_from_clusters(train, clusters, classes);
  ref.class_names.assign(class_names.begin(), class_names.end());
  return ref;
}

void save_reference(const ReferenceMatrix& ref, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file " + path.string());
  std::vector<std::string> header{"class_label", "cluster_index", "support"};
  for (std::size_t l = 1; l <= ref.dimension; ++l) {
    header.push_back("lo_" + std::to_string(l));
    header.push_back("hi_" + std::to_string(l));
  }
  csv::write_row(out, header);
  for (const auto& rep : ref.representatives) {
    std::vector<std::string> row;
    row.push_back(static_cast<std::size_t>(rep.class_label) < ref.class_names.size()
                      ? ref.class_names[rep.class_label]
                      : std::to_string(rep.class_label));
    row.push_back(std::to_string(rep.cluster_index));
    row.push_back(std::to_string(rep.support));
    for (const auto& iv : rep.intervals) {
      row.push_back(csv::format_double(iv.lo));
      row.push_back(csv::format_double(iv.hi));
    }
    csv::write_row(out, row);
  }
  if (!out) throw DataError("failed writing model file " + path.string());
}

ReferenceMatrix load_reference(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file " + path.string());
  std::vector<std::string> fields;
  if (!csv::next_record(in, fields) || fields.size() < 3 || fields[0] != "class_label" ||
      (fields.size() - 3) % 2 != 0)
    throw DataError("model file " + path.string() + " has no valid header");
  ReferenceMatrix ref;
  ref.dimension = (fields.size() - 3) / 2;
  std::map<std::string, int> ids;
  std::size_t line = 1;
  while (csv::next_record(in, fields)) {
    ++line;
    if (fields.size() != 3 + 2 * ref.dimension)
      throw DataError("model file line " + std::to_string(line) + ": wrong column count");
    ClusterRepresentative rep;
    auto [it, inserted] = ids.emplace(fields[0], static_cast<int>(ids.size()));
    if (inserted) ref.class_names.push_back(fields[0]);
    rep.class_label = it->second;
    try {
      rep.cluster_index = std::stoul(fields[1]);
      rep.support = std::stoul(fields[2]);
    } catch (const std::exception&) {
      throw DataError("model file line " + std::to_string(line) + ": bad integer field");
    }
    for (std::size_t l = 0; l < ref.dimension; ++l)
      rep.intervals.push_back(
          {csv::parse_double(fields[3 + 2 * l]), csv::parse_double(fields[4 + 2 * l])});
    ref.representatives.push_back(std::move(rep));
  }
  ref.classes = ref.class_names.size();
  if (ref.classes == 0) throw DataError("model file " + path.string() + " has no representatives");
  if (ref.representatives.size() % ref.classes != 0)
    throw DataError("model file: classes contribute unequal representative counts");
  ref.clusters_per_class = ref.representatives.size() / ref.classes;
  ref.validate();
  return ref;
}

}  // namespace logosym
