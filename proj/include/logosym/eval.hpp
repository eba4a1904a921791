#pragma once

#include <span>
#include <string>
#include <vector>

#include "logosym/classify.hpp"
#include "logosym/matrix.hpp"
#include "logosym/symbolic.hpp"

namespace logosym {

// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t classes, std::vector<std::string> names = {});
  static ConfusionMatrix from_counts(const std::vector<std::vector<std::size_t>>& rows,
                                     std::vector<std::string> names = {});

  std::size_t classes() const { return m_; }
  std::size_t& at(std::size_t truth, std::size_t pred) { return counts_[truth * m_ + pred]; }
  std::size_t at(std::size_t truth, std::size_t pred) const { return counts_[truth * m_ + pred]; }
  std::size_t total() const;
  std::size_t trace() const;
  std::size_t row_sum(std::size_t truth) const;
  std::size_t column_sum(std::size_t pred) const;
  const std::vector<std::string>& names() const { return names_; }

  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::size_t> counts_;
  std::vector<std::string> names_;
};

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> pred, std::size_t classes,
                          std::vector<std::string> names = {});

// All values in percent.
struct MetricsReport {
  double accuracy = 0.0;
  std::vector<double> class_precision;
  std::vector<double> class_recall;
  double precision = 0.0;  // unweighted mean over classes
  double recall = 0.0;
  double f_measure = 0.0;
  double avg_time_per_sample = 0.0;  // seconds; filled by timing runs
  // Classes whose precision (never predicted) or recall (never present) had
  // a zero denominator and were set to 0.
  std::vector<std::size_t> undefined_precision;
  std::vector<std::size_t> undefined_recall;
};

// Harmonic mean of precision and recall given in percent; 0 when both are 0.
double f_measure(double precision_pct, double recall_pct);

MetricsReport metrics(const ConfusionMatrix& cm);

// Same, with declared per-class sample counts used as recall and accuracy
// denominators. Samples missing from the matrix count as misclassified.
MetricsReport metrics(const ConfusionMatrix& cm, std::span<const std::size_t> class_sizes);

struct Summary {
  double min = 0.0;
  double max = 0.0;
  double avg = 0.0;
  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summarize(std::span<const double> values);

enum class ClassifierKind { Proposed, NearestNeighbor, ClusterMean };

const char* to_string(ClassifierKind kind);

// Everything the three classifiers need, fitted on one training split.
struct TrainedModel {
  ReferenceMatrix reference;
  Matrix train;
  std::vector<int> train_labels;
  LabeledCentroids centroids;
};

struct TimedPredictions {
  std::vector<int> predictions;
  double avg_seconds = 0.0;
  std::size_t comparisons = 0;  // representative or distance evaluations
};

// Classifies every row with a monotonic clock around the loop only.
TimedPredictions timed_classify(const Matrix& samples, const TrainedModel& model,
                                ClassifierKind kind);

}  // namespace logosym
