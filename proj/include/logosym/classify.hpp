#pragma once

#include <span>
#include <vector>

#include "logosym/matrix.hpp"
#include "logosym/symbolic.hpp"

namespace logosym {

// 1 when lo <= s <= hi (both ends inclusive), else 0.
inline int similarity(double s, const Interval& iv) { return (s >= iv.lo && s <= iv.hi) ? 1 : 0; }

// Number of features of a crisp sample falling inside the representative's
// intervals.
int acceptance_count(std::span<const double> sample, const ClusterRepresentative& rep);

struct ClassificationOutcome {
  int predicted_class = -1;
  int best_class = -1;              // class of the chosen representative
  std::size_t best_cluster = 0;     // cluster index of the chosen representative
  std::vector<int> acceptance_counts;  // one per representative, matrix order
  int max_count = 0;
  bool tie = false;        // the maximal count is shared across classes
  bool no_coverage = false;  // sample lies in no interval of any representative
};

// Argmax of the acceptance count over all representatives. Ties: if every
// tied representative has the same class, that class; otherwise the class
// with most tied representatives; otherwise the smallest class index.
// `comparisons` counts representatives evaluated.
ClassificationOutcome classify(std::span<const double> sample, const ReferenceMatrix& reference,
                               std::size_t* comparisons = nullptr);

// Model-1: label of the Euclidean nearest training sample; equal distances
// resolve to the smallest sample index. `comparisons`, when given, is
// incremented once per distance evaluation.
int knn1_classify(std::span<const double> sample, const Matrix& train, std::span<const int> labels,
                  std::size_t* comparisons = nullptr);

// Centroids of every class's clusters, labeled by class.
struct LabeledCentroids {
  Matrix centroids;
  std::vector<int> labels;
};

LabeledCentroids centroids_from_clusters(const std::vector<ClassClustering>& clusters);

// Model-2: 1-NN over the cluster centroids.
int cluster_mean_classify(std::span<const double> sample, const LabeledCentroids& centroids,
                          std::size_t* comparisons = nullptr);

}  // namespace logosym
