#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "logosym/eval.hpp"

using namespace logosym;

namespace {

// Published 3-class result: rows are true both/text/symbol, columns predicted.
const std::vector<std::vector<std::size_t>> kPublished{{818, 86, 47}, {154, 194, 25}, {93, 24, 71}};

void expand(const std::vector<std::vector<std::size_t>>& cm, std::vector<int>& truth, std::vector<int>& pred) {
  for (std::size_t i = 0; i < cm.size(); ++i)
    for (std::size_t j = 0; j < cm.size(); ++j)
      for (std::size_t n = 0; n < cm[i][j]; ++n) {
        truth.push_back(static_cast<int>(i));
        pred.push_back(static_cast<int>(j));
      }
}

}  // namespace

TEST_CASE("confusion matrix") {
  SUBCASE("perfect predictions are diagonal") {
    const std::vector<int> y{0, 1, 2, 2, 1};
    const auto cm = confusion(y, y, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) CHECK(cm.at(i, j) == 0);
    CHECK(cm.trace() == 5);
  }
  SUBCASE("published matrix from its prediction multiset") {
    std::vector<int> truth, pred;
    expand(kPublished, truth, pred);
    std::mt19937_64 rng(1);
    std::vector<std::size_t> order(truth.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> t2, p2;
    for (auto i : order) {
      t2.push_back(truth[i]);
      p2.push_back(pred[i]);
    }
    const auto cm = confusion(t2, p2, 3);
    CHECK(cm == ConfusionMatrix::from_counts(kPublished));
    CHECK(cm.total() == 1512);
    CHECK(cm.row_sum(0) == 951);
    CHECK(cm.row_sum(1) == 373);
    CHECK(cm.row_sum(2) == 188);
  }
  SUBCASE("empty input") {
    const auto cm = confusion(std::vector<int>{}, std::vector<int>{}, 3);
    CHECK(cm.total() == 0);
    CHECK_THROWS(metrics(cm));
  }
  SUBCASE("errors") {
    CHECK_THROWS(confusion(std::vector<int>{0, 1}, std::vector<int>{0}, 2));
    CHECK_THROWS(confusion(std::vector<int>{0, 3}, std::vector<int>{0, 1}, 2));
  }
}

TEST_CASE("metrics on the published matrix") {
  // Row headers declare 951 / 419 / 188 samples; the text row's counts sum
  // to 373, so the 46 unplaced text samples count as errors.
  const std::vector<std::size_t> declared{951, 419, 188};
  const auto r = metrics(ConfusionMatrix::from_counts(kPublished), declared);
  // 818 + 194 + 71 = 1083 correct.
  CHECK(r.accuracy == doctest::Approx(100.0 * 1083 / 1558));
  CHECK(std::abs(r.accuracy - 69.51) < 0.01);
  CHECK(std::abs(r.class_recall[1] - 100.0 * 194 / 419) < 1e-9);
  const auto counts_only = metrics(ConfusionMatrix::from_counts(kPublished));
  CHECK(std::abs(counts_only.accuracy - 71.63) < 0.01);  // 1083 / 1512
  CHECK(counts_only.class_recall[0] == r.class_recall[0]);
  CHECK(counts_only.class_precision == r.class_precision);
  CHECK_THROWS(metrics(ConfusionMatrix::from_counts(kPublished), std::vector<std::size_t>{951, 300, 188}));
  CHECK(std::abs(r.class_recall[0] - 86.02) < 0.01);     // 818 / 951
  CHECK(std::abs(r.class_precision[0] - 76.81) < 0.01);  // 818 / 1065
  CHECK(r.precision == doctest::Approx((r.class_precision[0] + r.class_precision[1] + r.class_precision[2]) / 3));
  CHECK(r.recall == doctest::Approx((r.class_recall[0] + r.class_recall[1] + r.class_recall[2]) / 3));
  CHECK(r.f_measure >= std::min(r.precision, r.recall));
  CHECK(r.f_measure <= std::max(r.precision, r.recall));
  CHECK(r.undefined_precision.empty());
}

TEST_CASE("f-measure") {
  for (double x : {0.0, 12.5, 50.0, 99.9, 100.0}) CHECK(f_measure(x, x) == doctest::Approx(x));
  // Harmonic mean of the fractions, scaled once to percent.
  CHECK(std::abs(f_measure(66.89, 57.27) - 61.71) < 0.01);
  CHECK(f_measure(0, 0) == 0.0);
}

TEST_CASE("zero denominators are flagged") {
  // Class 2 is never present and never predicted.
  const auto r = metrics(ConfusionMatrix::from_counts({{3, 1, 0}, {0, 2, 0}, {0, 0, 0}}));
  CHECK(r.undefined_precision == std::vector<std::size_t>{2});
  CHECK(r.undefined_recall == std::vector<std::size_t>{2});
  CHECK(r.class_precision[2] == 0.0);
  CHECK(r.class_recall[2] == 0.0);
}

TEST_CASE("metric properties on random matrices") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 200; ++it) {
    const std::size_t m = 2 + rng() % 4;
    std::vector<int> truth, pred;
    const std::size_t n = 1 + rng() % 100;
    for (std::size_t i = 0; i < n; ++i) {
      truth.push_back(static_cast<int>(rng() % m));
      pred.push_back(static_cast<int>(rng() % m));
    }
    const auto cm = confusion(truth, pred, m);
    const auto r = metrics(cm);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) correct += truth[i] == pred[i];
    CHECK(cm.trace() == correct);
    CHECK(r.accuracy == 100.0 * static_cast<double>(correct) / static_cast<double>(n));
    for (std::size_t c = 0; c < m; ++c) {
      CHECK(r.class_precision[c] >= 0.0);
      CHECK(r.class_precision[c] <= 100.0);
      CHECK(r.class_recall[c] >= 0.0);
      CHECK(r.class_recall[c] <= 100.0);
    }
    if (r.precision + r.recall > 0) {
      CHECK(r.f_measure >= std::min(r.precision, r.recall) - 1e-9);
      CHECK(r.f_measure <= std::max(r.precision, r.recall) + 1e-9);
    }
  }
}

TEST_CASE("summaries") {
  const std::vector<double> same(20, 61.63);
  const auto s = summarize(same);
  CHECK(s.min == s.max);
  CHECK(s.avg == s.min);
  const auto t = summarize(std::vector<double>{1, 2, 6});
  CHECK(t.min == 1);
  CHECK(t.max == 6);
  CHECK(t.avg == 3);
  CHECK_THROWS(summarize(std::vector<double>{}));
}

TEST_CASE("timed classification") {
  TrainedModel model;
  model.train = Matrix::from_rows({{0, 0}, {1, 1}, {5, 5}, {6, 6}});
  model.train_labels = {0, 0, 1, 1};
  model.centroids = {Matrix::from_rows({{0.5, 0.5}, {5.5, 5.5}}), {0, 1}};
  model.reference.classes = 2;
  model.reference.clusters_per_class = 1;
  model.reference.dimension = 2;
  model.reference.representatives = {{0, 0, {{0, 1}, {0, 1}}, 2}, {1, 0, {{5, 6}, {5, 6}}, 2}};
  const Matrix samples = Matrix::from_rows({{0.2, 0.9}, {5.5, 5.1}, {0.7, 0.1}});
  for (auto kind : {ClassifierKind::Proposed, ClassifierKind::NearestNeighbor, ClassifierKind::ClusterMean}) {
    const auto tp = timed_classify(samples, model, kind);
    CHECK(tp.predictions == std::vector<int>{0, 1, 0});
    CHECK(tp.avg_seconds > 0.0);
  }
  CHECK(timed_classify(samples, model, ClassifierKind::Proposed).comparisons == 3 * 2);
  CHECK(timed_classify(samples, model, ClassifierKind::NearestNeighbor).comparisons == 3 * 4);
  CHECK(timed_classify(samples, model, ClassifierKind::ClusterMean).comparisons == 3 * 2);
  CHECK_THROWS(timed_classify(Matrix(), model, ClassifierKind::Proposed));
}
