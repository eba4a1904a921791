#pragma once

#include <cstdint>
#include <vector>

#include "logosym/matrix.hpp"

namespace logosym {

struct KMeansOptions {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  int max_iter = 100;
  double tol = 1e-6;
  int restarts = 10;  // independent seeded initializations; lowest SSE wins
};

struct ClusteringResult {
  std::vector<std::size_t> assignments;  // per sample, in [0, k)
  Matrix centroids;                      // k x d
  double sse = 0.0;
  int iterations = 0;
  // SSE after every assignment step, then the final SSE. Non-increasing.
  std::vector<double> sse_history;
};

// Lloyd's algorithm with squared Euclidean distance. Each restart starts from
// k distinct samples drawn with a seeded RNG; the run with the lowest SSE is
// returned (the earliest on ties).
ClusteringResult kmeans(const Matrix& points, const KMeansOptions& options);

// Same iterations from explicit initial centroids (k = initial.rows()).
ClusteringResult kmeans_from(const Matrix& points, Matrix initial, int max_iter = 100,
                             double tol = 1e-6);

// Sample indices of the seeded initialization used by kmeans().
std::vector<std::size_t> initial_indices(std::size_t n, std::size_t k, std::uint64_t seed);

// Seed of restart r; restart 0 uses the seed unchanged.
std::uint64_t restart_seed(std::uint64_t seed, int restart);

double squared_distance(std::span<const double> a, std::span<const double> b);

// Sum of squared distances of each point to its assigned centroid.
double sum_squared_error(const Matrix& points, const Matrix& centroids,
                         const std::vector<std::size_t>& assignments);

}  // namespace logosym
