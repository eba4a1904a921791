#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "logosym/clustering.hpp"
#include "logosym/matrix.hpp"

namespace logosym {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// One row of the reference matrix: a cluster of one class summarized as a
// mean +/- standard deviation interval per feature.
struct ClusterRepresentative {
  int class_label = 0;
  std::size_t cluster_index = 0;
  std::vector<Interval> intervals;
  std::size_t support = 0;  // samples in the cluster

  std::size_t dimension() const { return intervals.size(); }
  friend bool operator==(const ClusterRepresentative&, const ClusterRepresentative&) = default;
};

// Representatives ordered class-major, then by cluster index.
struct ReferenceMatrix {
  std::vector<ClusterRepresentative> representatives;
  std::size_t dimension = 0;
  std::size_t classes = 0;
  std::size_t clusters_per_class = 0;
  std::vector<std::string> class_names;

  std::size_t size() const { return representatives.size(); }
  bool empty() const { return representatives.empty(); }

  // Throws DataError when counts or interval bounds are inconsistent.
  void validate() const;
};

struct ClusterStats {
  std::vector<double> mean;
  std::vector<double> std;
};

// Column means and sample standard deviations (n-1 denominator). A single
// sample has zero deviation.
ClusterStats cluster_stats(const Matrix& samples);

ClusterRepresentative make_representative(const Matrix& samples, int class_label,
                                          std::size_t cluster_index);

// Per-class clusterings used to build a reference matrix; kept so the
// cluster-mean baseline can reuse exactly the same partitions.
struct ClassClustering {
  int class_label = 0;
  std::vector<std::size_t> rows;  // indices into the training matrix
  ClusteringResult result;
};

// Seed of the per-class k-means run.
std::uint64_t class_seed(std::uint64_t seed, int class_label);

// Runs k-means separately inside every class. Throws InfeasibleError naming
// the first class with fewer than k samples.
std::vector<ClassClustering> cluster_classes(const Matrix& train, std::span<const int> labels,
                                             std::size_t classes, const KMeansOptions& options,
                                             std::span<const std::string> class_names = {});

ReferenceMatrix reference_from_clusters(const Matrix& train,
                                        const std::vector<ClassClustering>& clusters,
                                        std::size_t classes);

ReferenceMatrix build_reference(const Matrix& train, std::span<const int> labels,
                                std::size_t classes, const KMeansOptions& options,
                                std::span<const std::string> class_names = {});

// CSV persistence: header, then one row per representative with
// class_label, cluster_index, support, lo_1, hi_1, ..., lo_d, hi_d.
void save_reference(const ReferenceMatrix& ref, const std::filesystem::path& path);
ReferenceMatrix load_reference(const std::filesystem::path& path);

}  // namespace logosym
