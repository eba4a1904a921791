#include "logosym/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace logosym {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double sum_squared_error(const Matrix& points, const Matrix& centroids,
                         const std::vector<std::size_t>& assignments) {
  double sse = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i)
    sse += squared_distance(points.row(i), centroids.row(assignments[i]));
  return sse;
}

std::vector<std::size_t> initial_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > n) throw std::invalid_argument("initial_indices: need 1 <= k <= n");
  // Partial Fisher-Yates over the index range.
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  return idx;
}

namespace {

void check_points(const Matrix& points) {
  if (points.empty() || points.cols() == 0)
    throw std::invalid_argument("kmeans: empty input");
  for (double v : points.data())
    if (!std::isfinite(v)) throw std::invalid_argument("kmeans: non-finite input value");
}

// Nearest centroid, ties broken towards the lower cluster index.
std::size_t nearest(std::span<const double> p, const Matrix& centroids, double& best) {
  std::size_t arg = 0;
  best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double d = squared_distance(p, centroids.row(c));
    if (d < best) {
      best = d;
      arg = c;
    }
  }
  return arg;
}

// Moves the point farthest from its centroid (taken from a cluster with more
// than one member) into each empty cluster and centers the cluster on it.
void repair_empty(const Matrix& points, Matrix& centroids, std::vector<std::size_t>& assign,
                  std::vector<double>& dist) {
  const std::size_t k = centroids.rows();
  std::vector<std::size_t> sizes(k, 0);
  for (auto a : assign) ++sizes[a];
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] != 0) continue;
    std::size_t far = points.rows();
    double far_d = -1.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
      if (sizes[assign[i]] > 1 && dist[i] > far_d) {
        far_d = dist[i];
        far = i;
      }
    }
    --sizes[assign[far]];
    assign[far] = c;
    sizes[c] = 1;
    dist[far] = 0.0;
    auto src = points.row(far);
    std::copy(src.begin(), src.end(), centroids.row(c).begin());
  }
}

}  // namespace

ClusteringResult kmeans_from(const Matrix& points, Matrix centroids, int max_iter, double tol) {
  check_points(points);
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  const std::size_t k = centroids.rows();
  if (k == 0) throw std::invalid_argument("kmeans: k must be at least 1");
  if (k > n) throw std::invalid_argument("kmeans: k exceeds the number of points");
  if (centroids.cols() != d) throw std::invalid_argument("kmeans: centroid dimension mismatch");
  if (max_iter < 1) throw std::invalid_argument("kmeans: max_iter must be at least 1");

  ClusteringResult res;
  res.assignments.assign(n, 0);
  std::vector<double> dist(n, 0.0);
  for (int it = 1; it <= max_iter; ++it) {
    res.iterations = it;
    for (std::size_t i = 0; i < n; ++i)
      res.assignments[i] = nearest(points.row(i), centroids, dist[i]);
    repair_empty(points, centroids, res.assignments, dist);
    res.sse_history.push_back(std::accumulate(dist.begin(), dist.end(), 0.0));

    Matrix updated(k, d, 0.0);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto dst = updated.row(res.assignments[i]);
      auto src = points.row(i);
      for (std::size_t j = 0; j < d; ++j) dst[j] += src[j];
      ++sizes[res.assignments[i]];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      auto row = updated.row(c);
      for (double& v : row) v /= static_cast<double>(sizes[c]);
      shift = std::max(shift, std::sqrt(squared_distance(row, centroids.row(c))));
    }
    centroids = std::move(updated);
    if (shift < tol) break;
  }
  res.centroids = std::move(centroids);
  res.sse = sum_squared_error(points, res.centroids, res.assignments);
  res.sse_history.push_back(res.sse);
  return res;
}

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  if (restart == 0) return seed;
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(restart);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

ClusteringResult kmeans(const Matrix& points, const KMeansOptions& options) {
  check_points(points);
  if (options.k == 0) throw std::invalid_argument("kmeans: k must be at least 1");
  if (options.k > points.rows())
    throw std::invalid_argument("kmeans: k exceeds the number of points");
  if (options.restarts < 1) throw std::invalid_argument("kmeans: restarts must be at least 1");
  ClusteringResult best;
  for (int r = 0; r < options.restarts; ++r) {
    const auto idx = initial_indices(points.rows(), options.k, restart_seed(options.seed, r));
    auto run = kmeans_from(points, points.select_rows(idx), options.max_iter, options.tol);
    if (r == 0 || run.sse < best.sse) best = std::move(run);
  }
  return best;
}

}  // namespace logosym
