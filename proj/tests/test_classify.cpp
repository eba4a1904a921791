#include <doctest.h>

#include <random>

#include "logosym/classify.hpp"
#include "oracles.hpp"

using namespace logosym;

namespace {

ClusterRepresentative rep(int cls, std::size_t cluster, std::vector<Interval> iv) {
  return {cls, cluster, std::move(iv), 1};
}

ReferenceMatrix matrix(std::vector<ClusterRepresentative> reps, std::size_t classes) {
  ReferenceMatrix m;
  m.dimension = reps.front().dimension();
  m.classes = classes;
  m.clusters_per_class = reps.size() / classes;
  m.representatives = std::move(reps);
  return m;
}

}  // namespace

TEST_CASE("similarity is inclusive") {
  CHECK(similarity(1.0, {1.0, 2.0}) == 1);
  CHECK(similarity(2.0, {1.0, 2.0}) == 1);
  CHECK(similarity(std::nextafter(2.0, 3.0), {1.0, 2.0}) == 0);
  CHECK(similarity(5.0, {5.0, 5.0}) == 1);
  CHECK(similarity(0.999, {1.0, 2.0}) == 0);
}

TEST_CASE("acceptance count") {
  const auto r = rep(0, 0, {{0, 1}, {3, 4}});
  CHECK(acceptance_count(std::vector<double>{0.5, 2.0}, r) == 1);
  CHECK(acceptance_count(std::vector<double>{0.5, 3.5}, r) == 2);
  CHECK(acceptance_count(std::vector<double>{-1, 9}, r) == 0);
  CHECK_THROWS_AS(acceptance_count(std::vector<double>{0.5}, r), std::invalid_argument);

  std::vector<Interval> all(60, Interval{0, 1});
  CHECK(acceptance_count(std::vector<double>(60, 0.5), rep(0, 0, all)) == 60);
  CHECK(acceptance_count(std::vector<double>(60, 2.0), rep(0, 0, all)) == 0);
}

TEST_CASE("classification and the tie policy") {
  SUBCASE("unique maximum") {
    const auto m = matrix({rep(0, 0, {{0, 1}, {0, 1}}), rep(1, 0, {{5, 6}, {5, 6}}),
                           rep(2, 0, {{0, 1}, {2, 3}})},
                          3);
    const auto out = classify(std::vector<double>{0.5, 2.5}, m);
    CHECK(out.predicted_class == 2);
    CHECK_FALSE(out.tie);
    CHECK(out.acceptance_counts == std::vector<int>{1, 0, 2});
    CHECK(out.best_class == 2);
  }
  SUBCASE("same-class tie is not a tie") {
    const auto m = matrix({rep(0, 0, {{0, 1}}), rep(0, 1, {{5, 6}}), rep(1, 0, {{0, 1}}),
                           rep(1, 1, {{2, 3}})},
                          2);
    const auto out = classify(std::vector<double>{2.5}, m);
    CHECK(out.predicted_class == 1);
    CHECK_FALSE(out.tie);
    CHECK(out.best_cluster == 1);
  }
  SUBCASE("majority among tied representatives") {
    // Class 1 has two representatives at the maximum, class 0 has one.
    const auto m = matrix({rep(0, 0, {{0, 1}, {0, 1}}), rep(0, 1, {{9, 9}, {9, 9}}),
                           rep(1, 0, {{0, 1}, {0, 1}}), rep(1, 1, {{0, 2}, {0, 2}})},
                          2);
    const auto out = classify(std::vector<double>{0.5, 0.5}, m);
    CHECK(out.predicted_class == 1);
    CHECK(out.tie);
    CHECK(out.best_cluster == 0);
  }
  SUBCASE("equal votes fall back to the smallest class") {
    const auto m = matrix({rep(0, 0, {{9, 9}}), rep(1, 0, {{0, 1}}), rep(2, 0, {{0, 1}})}, 3);
    const auto out = classify(std::vector<double>{0.5}, m);
    CHECK(out.predicted_class == 1);
    CHECK(out.tie);
  }
  SUBCASE("no coverage") {
    const auto m = matrix({rep(0, 0, {{0, 1}}), rep(1, 0, {{2, 3}})}, 2);
    const auto out = classify(std::vector<double>{10}, m);
    CHECK(out.no_coverage);
    CHECK(out.predicted_class == 0);
    CHECK(out.tie);
  }
  SUBCASE("empty reference") { CHECK_THROWS(classify(std::vector<double>{1}, ReferenceMatrix{})); }
}

TEST_CASE("random instances: counts match a naive loop, widening never hurts") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  for (int it = 0; it < 200; ++it) {
    const std::size_t d = 1 + rng() % 6, classes = 1 + rng() % 3, k = 1 + rng() % 3;
    std::vector<ClusterRepresentative> reps;
    std::vector<std::vector<double>> lo, hi;
    for (std::size_t c = 0; c < classes; ++c)
      for (std::size_t j = 0; j < k; ++j) {
        std::vector<Interval> iv;
        std::vector<double> l, h;
        for (std::size_t f = 0; f < d; ++f) {
          double a = u(rng), b = u(rng);
          if (a > b) std::swap(a, b);
          iv.push_back({a, b});
          l.push_back(a);
          h.push_back(b);
        }
        reps.push_back(rep(static_cast<int>(c), j, iv));
        lo.push_back(l);
        hi.push_back(h);
      }
    const auto m = matrix(reps, classes);
    std::vector<double> s(d);
    for (auto& v : s) v = u(rng);
    const auto out = classify(s, m);
    for (std::size_t r = 0; r < reps.size(); ++r)
      CHECK(out.acceptance_counts[r] == oracle::naive_count(s, lo[r], hi[r]));
    CHECK(out.acceptance_counts[std::distance(
              out.acceptance_counts.begin(),
              std::max_element(out.acceptance_counts.begin(), out.acceptance_counts.end()))] ==
          out.max_count);
    CHECK(classify(s, m).acceptance_counts == out.acceptance_counts);

    auto wider = reps[0];
    for (auto& iv : wider.intervals) {
      iv.lo -= 0.1;
      iv.hi += 0.1;
    }
    CHECK(acceptance_count(s, wider) >= out.acceptance_counts[0]);
  }
}

TEST_CASE("Model-1 nearest neighbour") {
  const Matrix train = Matrix::from_rows({{0}, {10}});
  const std::vector<int> labels{0, 1};
  CHECK(knn1_classify(std::vector<double>{4}, train, labels) == 0);
  CHECK(knn1_classify(std::vector<double>{5}, train, labels) == 0);
  CHECK(knn1_classify(std::vector<double>{6}, train, labels) == 1);
  CHECK(knn1_classify(std::vector<double>{10}, train, labels) == 1);
  std::size_t comparisons = 0;
  knn1_classify(std::vector<double>{1}, train, labels, &comparisons);
  CHECK(comparisons == 2);
  CHECK_THROWS(knn1_classify(std::vector<double>{1}, Matrix(), std::vector<int>{}));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  Matrix pts(40, 3);
  std::vector<int> y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = 0; j < 3; ++j) pts(i, j) = u(rng);
    y[i] = static_cast<int>(rng() % 3);
  }
  for (std::size_t i = 0; i < 40; ++i) CHECK(knn1_classify(pts.row(i), pts, y) == y[i]);
}

TEST_CASE("Model-2 cluster means") {
  LabeledCentroids c{Matrix::from_rows({{0}, {1}, {10}}), {0, 0, 1}};
  CHECK(cluster_mean_classify(std::vector<double>{2}, c) == 0);
  CHECK(cluster_mean_classify(std::vector<double>{10}, c) == 1);
  LabeledCentroids one{Matrix::from_rows({{3, 3}}), {2}};
  CHECK(cluster_mean_classify(std::vector<double>{-100, 50}, one) == 2);
  CHECK_THROWS(cluster_mean_classify(std::vector<double>{1}, LabeledCentroids{}));
}
