#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "logosym/image.hpp"
#include "logosym/matrix.hpp"

namespace logosym {

// A Zernike (order, repetition) pair.
struct ZernikeOrder {
  int n = 0;
  int m = 0;
  friend bool operator==(const ZernikeOrder&, const ZernikeOrder&) = default;
};

// Replaceable feature parameters. The defaults give the 60-feature layout:
// 48 color (8 blocks x 3 channels x {mean, percentage}), 8 texture
// (4 orientations x {mean, std}) and 4 shape (2 moments x 2 orientations).
struct FeatureConfig {
  int width = 200;
  int height = 200;
  int grid_cols = 4;
  int grid_rows = 2;
  double texture_sigma = 1.0;
  int texture_kernel = 7;  // odd side length
  std::vector<ZernikeOrder> zernike_orders{{2, 0}, {2, 2}};

  std::size_t color_count() const { return 6u * grid_cols * grid_rows; }
  static constexpr std::size_t texture_count() { return 8; }
  std::size_t shape_count() const { return 2 * zernike_orders.size(); }
  std::size_t feature_count() const {
    return color_count() + texture_count() + shape_count();
  }

  // Throws ConfigError on nonsensical values.
  void validate() const;
};

inline constexpr std::size_t kFeatureCount = 60;

struct Preprocessed {
  ImageBuffer rgb;
  ImageBuffer gray;
};

// Bilinear resize (pixel-center aligned) of an RGB image followed by
// BT.601 grayscale conversion, gray = round(0.299R + 0.587G + 0.114B).
Preprocessed preprocess(const ImageBuffer& image, int width = 200, int height = 200);

ImageBuffer resize_bilinear(const ImageBuffer& image, int width, int height);
ImageBuffer to_gray(const ImageBuffer& rgb);

// Per block (row-major over the grid), per channel R, G, B: the block mean
// and the block's share of the whole-image channel sum in percent.
std::vector<double> color_features(const ImageBuffer& rgb, int grid_cols = 4, int grid_rows = 2);

// Steered first-order Gaussian derivative responses at 0, +45, -45 and 90
// degrees (y axis pointing down the rows). Emits mean and sample standard
// deviation of the absolute response for each orientation, in that order.
std::vector<double> texture_features(const ImageBuffer& gray, double sigma = 1.0,
                                     int kernel_size = 7);

// Zernike moment magnitudes on the inscribed unit disk, first for the image
// as-is, then for the image rotated by 90 degrees.
std::vector<double> shape_features(const ImageBuffer& gray,
                                   std::span<const ZernikeOrder> orders);
std::vector<double> shape_features(const ImageBuffer& gray);

// Complex Zernike moment Z(n, m) over the disk inscribed in the image, with
// the (n+1)/pi normalization and pixel area 1/R^2.
std::pair<double, double> zernike_moment(const ImageBuffer& gray, ZernikeOrder order);

// Zernike radial polynomial R_nm(rho).
double zernike_radial(int n, int m, double rho);

using FeatureVector = std::vector<double>;

// Color, texture and shape features concatenated (raw, not normalized).
FeatureVector extract(const ImageBuffer& rgb, const ImageBuffer& gray,
                      const FeatureConfig& config = {});

// Preprocess and extract in one call.
FeatureVector extract_image(const ImageBuffer& image, const FeatureConfig& config = {});

// Per-feature min-max scaling fitted on training data. Values outside the
// training range map outside [0, 1]; they are not clamped.
class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(std::vector<double> mins, std::vector<double> maxs);

  static Normalizer fit(const Matrix& train);

  std::vector<double> apply(std::span<const double> v) const;
  Matrix apply(const Matrix& m) const;

  const std::vector<double>& mins() const { return mins_; }
  const std::vector<double>& maxs() const { return maxs_; }
  std::size_t dimension() const { return mins_.size(); }

 private:
  std::vector<double> mins_;
  std::vector<double> maxs_;
};

}  // namespace logosym
