#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "logosym/classify.hpp"
#include "logosym/errors.hpp"
#include "logosym/symbolic.hpp"
#include "oracles.hpp"

using namespace logosym;
namespace fs = std::filesystem;

TEST_CASE("cluster statistics") {
  auto st = cluster_stats(Matrix::from_rows({{5}, {5}, {5}}));
  CHECK(st.mean[0] == 5.0);
  CHECK(st.std[0] == 0.0);
  st = cluster_stats(Matrix::from_rows({{1}, {3}}));
  CHECK(st.mean[0] == 2.0);
  CHECK(st.std[0] == doctest::Approx(std::sqrt(2.0)));
  st = cluster_stats(Matrix::from_rows({{4.25, -1}}));
  CHECK(st.mean[0] == 4.25);
  CHECK(st.std[0] == 0.0);
  CHECK_THROWS_AS(cluster_stats(Matrix()), std::invalid_argument);
}

TEST_CASE("representatives") {
  auto rep = make_representative(Matrix::from_rows({{1}, {3}}), 0, 0);
  CHECK(rep.intervals[0].lo == doctest::Approx(0.58579).epsilon(1e-5));
  CHECK(rep.intervals[0].hi == doctest::Approx(3.41421).epsilon(1e-5));
  CHECK(rep.support == 2);
  rep = make_representative(Matrix::from_rows({{7, 2}, {7, 2}, {7, 2}}), 1, 3);
  CHECK(rep.intervals[0] == Interval{7, 7});
  CHECK(rep.class_label == 1);
  CHECK(rep.cluster_index == 3);
  Matrix wide(4, 60, 0.5);
  CHECK(make_representative(wide, 0, 0).dimension() == 60);
  CHECK_THROWS(make_representative(Matrix(), 0, 0));
}

TEST_CASE("interval reconstruction and self-coverage") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd(0, 3);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng() % 15, d = 1 + rng() % 8;
    Matrix m(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = nd(rng);
    const auto rep = make_representative(m, 0, 0);
    const auto st = cluster_stats(m);
    for (std::size_t l = 0; l < d; ++l) {
      const auto& iv = rep.intervals[l];
      CHECK(iv.lo <= iv.hi);
      CHECK(std::abs((iv.hi + iv.lo) / 2 - st.mean[l]) <= 1e-12 * std::max(1.0, std::abs(st.mean[l])));
      CHECK(std::abs((iv.hi - iv.lo) / 2 - st.std[l]) <= 1e-12 * std::max(1.0, st.std[l]));
    }
    CHECK(acceptance_count(st.mean, rep) == static_cast<int>(d));

    // A copy of the mean added to the cluster never widens an interval.
    Matrix more = m;
    more.append_row(st.mean);
    const auto narrower = make_representative(more, 0, 0);
    for (std::size_t l = 0; l < d; ++l)
      CHECK(narrower.intervals[l].hi - narrower.intervals[l].lo <=
            rep.intervals[l].hi - rep.intervals[l].lo + 1e-12);
  }
}

namespace {

struct Labeled {
  Matrix x;
  std::vector<int> y;
};

Labeled three_classes(std::size_t per_class, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0, 1);
  Labeled out;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<double> row(5);
      for (auto& v : row) v = nd(rng) + 4.0 * c;
      out.x.append_row(row);
      out.y.push_back(c);
    }
  return out;
}

}  // namespace

TEST_CASE("reference matrix sizes") {
  const auto data = three_classes(12, 1);
  for (std::size_t k = 2; k <= 10; ++k) {
    const auto ref = build_reference(data.x, data.y, 3, {k, 7});
    CHECK(ref.size() == 3 * k);
    ref.validate();
    for (std::size_t r = 0; r < ref.size(); ++r) {
      CHECK(ref.representatives[r].class_label == static_cast<int>(r / k));
      CHECK(ref.representatives[r].cluster_index == r % k);
    }
  }
}

TEST_CASE("reference construction details") {
  SUBCASE("identical samples, k = 1") {
    Matrix x = Matrix::from_rows({{1, 2}, {1, 2}, {1, 2}});
    const auto ref = build_reference(x, std::vector<int>{0, 0, 0}, 1, {1, 0});
    REQUIRE(ref.size() == 1);
    CHECK(ref.representatives[0].intervals[0] == Interval{1, 1});
    CHECK(ref.representatives[0].intervals[1] == Interval{2, 2});
  }
  SUBCASE("too few samples names the class") {
    const auto data = three_classes(3, 2);
    const std::vector<std::string> names{"both", "symbol", "text"};
    try {
      build_reference(data.x, data.y, 3, {4, 0}, names);
      FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
      CHECK(std::string(e.what()).find("'both'") != std::string::npos);
    }
  }
  SUBCASE("supports sum to the class sizes") {
    const auto data = three_classes(20, 3);
    const auto ref = build_reference(data.x, data.y, 3, {4, 11});
    std::vector<std::size_t> support(3, 0);
    for (const auto& r : ref.representatives) support[r.class_label] += r.support;
    CHECK(support == std::vector<std::size_t>{20, 20, 20});
  }
}

TEST_CASE("model file round trip and validation") {
  const auto data = three_classes(10, 9);
  const std::vector<std::string> names{"both", "symbol", "text"};
  const auto ref = build_reference(data.x, data.y, 3, {2, 5}, names);
  const fs::path dir = fs::temp_directory_path() / "logosym_symbolic_test";
  fs::create_directories(dir);
  const fs::path file = dir / "model.csv";
  save_reference(ref, file);
  const auto loaded = load_reference(file);
  CHECK(loaded.representatives == ref.representatives);
  CHECK(loaded.class_names == names);
  CHECK(loaded.clusters_per_class == 2);

  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("class_label,cluster_index,support,lo_1,hi_1,lo_2", 0) == 0);

  // An inverted interval is rejected on load.
  {
    std::ofstream out(dir / "bad.csv");
    out << "class_label,cluster_index,support,lo_1,hi_1\n";
    out << "a,0,1,2,1\nb,0,1,0,1\n";
  }
  CHECK_THROWS_AS(load_reference(dir / "bad.csv"), DataError);
  {
    std::ofstream out(dir / "uneven.csv");
    out << "class_label,cluster_index,support,lo_1,hi_1\n";
    out << "a,0,1,0,1\na,1,1,0,1\nb,0,1,0,1\n";
  }
  CHECK_THROWS_AS(load_reference(dir / "uneven.csv"), DataError);
  fs::remove_all(dir);
}
