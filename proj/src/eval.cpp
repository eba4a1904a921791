#include "logosym/eval.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace logosym {

ConfusionMatrix::ConfusionMatrix(std::size_t classes, std::vector<std::string> names)
    : m_(classes), counts_(classes * classes, 0), names_(std::move(names)) {}

ConfusionMatrix ConfusionMatrix::from_counts(const std::vector<std::vector<std::size_t>>& rows,
                                             std::vector<std::string> names) {
  ConfusionMatrix cm(rows.size(), std::move(names));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("confusion matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) cm.at(i, j) = rows[i][j];
  }
  return cm;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < m_; ++i) t += at(i, i);
  return t;
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < m_; ++j) s += at(truth, j);
  return s;
}

std::size_t ConfusionMatrix::column_sum(std::size_t pred) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < m_; ++i) s += at(i, pred);
  return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (other.m_ != m_) throw std::invalid_argument("confusion matrices differ in class count");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> pred, std::size_t classes,
                          std::vector<std::string> names) {
  if (truth.size() != pred.size())
    throw std::invalid_argument("confusion: truth and prediction lengths differ");
  ConfusionMatrix cm(classes, std::move(names));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || pred[i] < 0 || static_cast<std::size_t>(truth[i]) >= classes ||
        static_cast<std::size_t>(pred[i]) >= classes)
      throw std::invalid_argument("confusion: label out of range");
    ++cm.at(truth[i], pred[i]);
  }
  return cm;
}

double f_measure(double precision_pct, double recall_pct) {
  const double p = precision_pct / 100.0;
  const double r = recall_pct / 100.0;
  if (p + r <= 0.0) return 0.0;
  return 2.0 * p * r / (p + r) * 100.0;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  std::vector<std::size_t> sizes(cm.classes());
  for (std::size_t i = 0; i < sizes.size(); ++i) sizes[i] = cm.row_sum(i);
  return metrics(cm, sizes);
}

MetricsReport metrics(const ConfusionMatrix& cm, std::span<const std::size_t> class_sizes) {
  const std::size_t m = cm.classes();
  if (class_sizes.size() != m) throw std::invalid_argument("metrics: class size count mismatch");
  std::size_t total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (class_sizes[i] < cm.row_sum(i)) throw std::invalid_argument("metrics: class size below row sum");
    total += class_sizes[i];
  }
  if (total == 0) throw std::invalid_argument("metrics: empty confusion matrix");
  MetricsReport rep;
  rep.accuracy = 100.0 * static_cast<double>(cm.trace()) / static_cast<double>(total);
  rep.class_precision.resize(m);
  rep.class_recall.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto diag = static_cast<double>(cm.at(i, i));
    const std::size_t col = cm.column_sum(i);
    const std::size_t row = class_sizes[i];
    if (col == 0) rep.undefined_precision.push_back(i);
    if (row == 0) rep.undefined_recall.push_back(i);
    rep.class_precision[i] = col ? 100.0 * diag / static_cast<double>(col) : 0.0;
    rep.class_recall[i] = row ? 100.0 * diag / static_cast<double>(row) : 0.0;
  }
  double ps = 0.0, rs = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    ps += rep.class_precision[i];
    rs += rep.class_recall[i];
  }
  rep.precision = ps / static_cast<double>(m);
  rep.recall = rs / static_cast<double>(m);
  rep.f_measure = f_measure(rep.precision, rep.recall);
  return rep;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  Summary s{values[0], values[0], 0.0};
  double sum = 0.0;
  for (double v : values) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.avg = sum / static_cast<double>(values.size());
  // Rounding in the mean of identical values can drift outside [min, max].
  s.avg = std::clamp(s.avg, s.min, s.max);
  return s;
}

const char* to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Proposed: return "proposed";
    case ClassifierKind::NearestNeighbor: return "model1";
    case ClassifierKind::ClusterMean: return "model2";
  }
  return "unknown";
}

TimedPredictions timed_classify(const Matrix& samples, const TrainedModel& model,
                                ClassifierKind kind) {
  if (samples.empty()) throw std::invalid_argument("timed_classify: no samples");
  TimedPredictions out;
  out.predictions.resize(samples.rows());
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    const auto s = samples.row(i);
    switch (kind) {
      case ClassifierKind::Proposed:
        out.predictions[i] = classify(s, model.reference, &out.comparisons).predicted_class;
        break;
      case ClassifierKind::NearestNeighbor:
        out.predictions[i] = knn1_classify(s, model.train, model.train_labels, &out.comparisons);
        break;
      case ClassifierKind::ClusterMean:
        out.predictions[i] = cluster_mean_classify(s, model.centroids, &out.comparisons);
        break;
    }
  }
  const std::chrono::duration<double> elapsed = Clock::now() - start;
  out.avg_seconds = elapsed.count() / static_cast<double>(samples.rows());
  return out;
}

}  // namespace logosym
