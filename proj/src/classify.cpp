#include "logosym/classify.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "logosym/clustering.hpp"

namespace logosym {

int acceptance_count(std::span<const double> sample, const ClusterRepresentative& rep) {
  if (sample.size() != rep.intervals.size())
    throw std::invalid_argument("acceptance_count: sample has " + std::to_string(sample.size()) +
                                " features, representative has " +
                                std::to_string(rep.intervals.size()));
  int count = 0;
  for (std::size_t l = 0; l < sample.size(); ++l) count += similarity(sample[l], rep.intervals[l]);
  return count;
}

ClassificationOutcome classify(std::span<const double> sample, const ReferenceMatrix& reference,
                               std::size_t* comparisons) {
  if (reference.empty()) throw std::invalid_argument("classify: empty reference matrix");
  ClassificationOutcome out;
  out.acceptance_counts.reserve(reference.size());
  int classes = 0;
  for (const auto& rep : reference.representatives) {
    out.acceptance_counts.push_back(acceptance_count(sample, rep));
    classes = std::max(classes, rep.class_label + 1);
    if (comparisons) ++*comparisons;
  }
  out.max_count = *std::max_element(out.acceptance_counts.begin(), out.acceptance_counts.end());
  out.no_coverage = out.max_count == 0;

  std::vector<int> votes(classes, 0);
  for (std::size_t r = 0; r < reference.size(); ++r)
    if (out.acceptance_counts[r] == out.max_count) ++votes[reference.representatives[r].class_label];
  out.tie = std::count_if(votes.begin(), votes.end(), [](int v) { return v > 0; }) > 1;
  // max_element returns the first maximum, i.e. the smallest class index.
  out.predicted_class = static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());

  for (std::size_t r = 0; r < reference.size(); ++r) {
    const auto& rep = reference.representatives[r];
    if (rep.class_label == out.predicted_class && out.acceptance_counts[r] == out.max_count) {
      out.best_class = rep.class_label;
      out.best_cluster = rep.cluster_index;
      break;
    }
  }
  return out;
}

namespace {

int nearest_label(std::span<const double> sample, const Matrix& points, std::span<const int> labels,
                  std::size_t* comparisons) {
  if (points.empty()) throw std::invalid_argument("nearest neighbour: empty training set");
  if (labels.size() != points.rows())
    throw std::invalid_argument("nearest neighbour: label count does not match sample count");
  if (sample.size() != points.cols())
    throw std::invalid_argument("nearest neighbour: dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const double d = squared_distance(sample, points.row(i));
    if (d < best) {
      best = d;
      arg = i;
    }
  }
  if (comparisons) *comparisons += points.rows();
  return labels[arg];
}

}  // namespace

int knn1_classify(std::span<const double> sample, const Matrix& train, std::span<const int> labels,
                  std::size_t* comparisons) {
  return nearest_label(sample, train, labels, comparisons);
}

LabeledCentroids centroids_from_clusters(const std::vector<ClassClustering>& clusters) {
  LabeledCentroids out;
  for (const auto& cc : clusters)
    for (std::size_t j = 0; j < cc.result.centroids.rows(); ++j) {
      out.centroids.append_row(cc.result.centroids.row(j));
      out.labels.push_back(cc.class_label);
    }
  return out;
}

int cluster_mean_classify(std::span<const double> sample, const LabeledCentroids& centroids,
                          std::size_t* comparisons) {
  if (centroids.centroids.empty()) throw std::invalid_argument("cluster_mean_classify: no centroids");
  return nearest_label(sample, centroids.centroids, centroids.labels, comparisons);
}

}  // namespace logosym
