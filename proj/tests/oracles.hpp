#pragma once

// Brute-force reference computations used only by the tests. Each one takes
// a different route from the library code it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "logosym/image.hpp"
#include "logosym/matrix.hpp"

namespace oracle {

using logosym::ImageBuffer;
using logosym::Matrix;

// Full 2-D first-derivative-of-Gaussian kernel evaluated directly, applied
// by direct 2-D convolution with symmetric reflection.
inline std::vector<double> texture_features_direct(const ImageBuffer& gray, double sigma, int size) {
  const int r = size / 2;
  double norm = 0.0;
  for (int t = -r; t <= r; ++t) norm += std::exp(-(t * t) / (2 * sigma * sigma));
  auto g = [&](int t) { return std::exp(-(t * t) / (2 * sigma * sigma)) / norm; };
  auto refl = [](int i, int n) {
    while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
    return i;
  };
  const int w = gray.width, h = gray.height;
  std::vector<double> gx(w * h), gy(w * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double sx = 0, sy = 0;
      for (int v = -r; v <= r; ++v)
        for (int u = -r; u <= r; ++u) {
          const double px = gray.at(refl(x - u, w), refl(y - v, h));
          sx += (-u / (sigma * sigma)) * g(u) * g(v) * px;
          sy += (-v / (sigma * sigma)) * g(u) * g(v) * px;
        }
      gx[y * w + x] = sx;
      gy[y * w + x] = sy;
    }
  std::vector<double> out;
  for (double deg : {0.0, 45.0, -45.0, 90.0}) {
    const double th = deg * std::numbers::pi / 180.0;
    std::vector<double> a(w * h);
    for (int i = 0; i < w * h; ++i) a[i] = std::abs(std::cos(th) * gx[i] + std::sin(th) * gy[i]);
    double m = 0;
    for (double v : a) m += v;
    m /= a.size();
    double ss = 0;
    for (double v : a) ss += (v - m) * (v - m);
    out.push_back(m);
    out.push_back(std::sqrt(ss / (a.size() - 1)));
  }
  return out;
}

// Z(2,0) and Z(2,2) written out from their closed forms in Cartesian
// coordinates: R20 = 2(x^2+y^2) - 1 and rho^2 e^{-2i theta} = (x - iy)^2.
inline std::complex<double> zernike_direct(const ImageBuffer& gray, int m) {
  const double R = std::min(gray.width, gray.height) / 2.0;
  std::complex<double> acc = 0;
  for (int y = 0; y < gray.height; ++y)
    for (int x = 0; x < gray.width; ++x) {
      const double xn = (x + 0.5 - gray.width / 2.0) / R;
      const double yn = (gray.height / 2.0 - (y + 0.5)) / R;
      if (xn * xn + yn * yn > 1.0) continue;
      const double f = gray.at(x, y);
      if (m == 0)
        acc += f * (2 * (xn * xn + yn * yn) - 1);
      else
        acc += f * std::complex<double>(xn, -yn) * std::complex<double>(xn, -yn);
    }
  return acc * (3.0 / std::numbers::pi) / (R * R);
}

// Discretization bound for the moments of a constant image c on a disk of
// R pixels: pixels whose inclusion differs from the exact disk lie in an
// annulus of width sqrt(2) around the circle (area 2*sqrt(2)*pi*R), where
// |R_2m| <= 1 + O(1/R); the midpoint rule is exact up to c/(2R^2) inside.
inline double uniform_disk_bound(double c, double R) {
  return (3.0 / std::numbers::pi) * c * (2.0 * std::numbers::sqrt2 * std::numbers::pi * R) / (R * R) *
             (1.0 + 2.0 / R) +
         c / (R * R);
}

// Global optimum SSE over all partitions of the rows into exactly k
// non-empty clusters.
inline double optimal_sse(const Matrix& pts, std::size_t k) {
  const std::size_t n = pts.rows(), d = pts.cols();
  std::vector<std::size_t> a(n, 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      std::vector<double> sum(k * d, 0.0);
      std::vector<std::size_t> cnt(k, 0);
      for (std::size_t j = 0; j < n; ++j) {
        ++cnt[a[j]];
        for (std::size_t l = 0; l < d; ++l) sum[a[j] * d + l] += pts(j, l);
      }
      for (auto c : cnt)
        if (c == 0) return;
      double sse = 0;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < d; ++l) {
          const double diff = pts(j, l) - sum[a[j] * d + l] / cnt[a[j]];
          sse += diff * diff;
        }
      best = std::min(best, sse);
      return;
    }
    for (std::size_t c = 0; c < k; ++c) {
      a[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

// Mean and sample standard deviation of one column, two-pass.
inline std::pair<double, double> column_mean_std(const Matrix& m, std::size_t col) {
  long double s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, col);
  const long double mean = s / m.rows();
  if (m.rows() < 2) return {static_cast<double>(mean), 0.0};
  long double ss = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) ss += (m(i, col) - mean) * (m(i, col) - mean);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(ss / (m.rows() - 1)))};
}

// Per-feature containment count written as a plain loop over bounds.
inline int naive_count(const std::vector<double>& s, const std::vector<double>& lo,
                       const std::vector<double>& hi) {
  int c = 0;
  for (std::size_t l = 0; l < s.size(); ++l)
    if (!(s[l] < lo[l]) && !(s[l] > hi[l])) ++c;
  return c;
}

inline ImageBuffer random_gray(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ImageBuffer img(w, h, 1);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng() & 0xFF);
  return img;
}

inline ImageBuffer random_rgb(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ImageBuffer img(w, h, 3);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng() & 0xFF);
  return img;
}

}  // namespace oracle
