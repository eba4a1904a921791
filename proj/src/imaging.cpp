#include "logosym/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "logosym/errors.hpp"

namespace logosym {

void FeatureConfig::validate() const {
  if (width < 1 || height < 1) throw ConfigError("resize target must be at least 1x1");
  if (grid_cols < 1 || grid_rows < 1) throw ConfigError("color grid must be at least 1x1");
  if (grid_cols > width || grid_rows > height)
    throw ConfigError("color grid finer than the resized image");
  if (!(texture_sigma > 0.0)) throw ConfigError("texture sigma must be positive");
  if (texture_kernel < 1 || texture_kernel % 2 == 0)
    throw ConfigError("texture kernel size must be a positive odd number");
  if (zernike_orders.empty()) throw ConfigError("at least one Zernike order is required");
  for (const auto& z : zernike_orders) {
    if (z.n < 0 || std::abs(z.m) > z.n || (z.n - std::abs(z.m)) % 2 != 0)
      throw ConfigError("invalid Zernike order (" + std::to_string(z.n) + "," +
                        std::to_string(z.m) + "): need |m| <= n and n-|m| even");
  }
}

ImageBuffer resize_bilinear(const ImageBuffer& image, int width, int height) {
  image.validate();
  if (width < 1 || height < 1) throw InvalidImage("resize target has zero dimension");
  ImageBuffer out(width, height, image.channels);
  const double sx = static_cast<double>(image.width) / width;
  const double sy = static_cast<double>(image.height) / height;

  struct Tap {
    int i0, i1;
    double frac;
  };
  auto taps = [](int dst, double scale, int src_len) {
    std::vector<Tap> t(dst);
    for (int i = 0; i < dst; ++i) {
      double s = (i + 0.5) * scale - 0.5;
      s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
      const int i0 = static_cast<int>(std::floor(s));
      t[i] = {i0, std::min(i0 + 1, src_len - 1), s - i0};
    }
    return t;
  };
  const auto xt = taps(width, sx, image.width);
  const auto yt = taps(height, sy, image.height);

  for (int y = 0; y < height; ++y) {
    const Tap& ty = yt[y];
    for (int x = 0; x < width; ++x) {
      const Tap& tx = xt[x];
      for (int c = 0; c < image.channels; ++c) {
        const double top = image.at(tx.i0, ty.i0, c) * (1.0 - tx.frac) +
                           image.at(tx.i1, ty.i0, c) * tx.frac;
        const double bottom = image.at(tx.i0, ty.i1, c) * (1.0 - tx.frac) +
                              image.at(tx.i1, ty.i1, c) * tx.frac;
        const double v = top * (1.0 - ty.frac) + bottom * ty.frac;
        out.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

ImageBuffer to_gray(const ImageBuffer& rgb) {
  rgb.validate();
  if (rgb.channels != 3) throw InvalidImage("grayscale conversion needs an RGB image");
  ImageBuffer gray(rgb.width, rgb.height, 1);
  for (int y = 0; y < rgb.height; ++y)
    for (int x = 0; x < rgb.width; ++x) {
      const double v = 0.299 * rgb.at(x, y, 0) + 0.587 * rgb.at(x, y, 1) +
                       0.114 * rgb.at(x, y, 2);
      gray.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  return gray;
}

Preprocessed preprocess(const ImageBuffer& image, int width, int height) {
  image.validate();
  if (image.channels != 3) throw InvalidImage("preprocess expects an RGB image");
  Preprocessed out;
  out.rgb = resize_bilinear(image, width, height);
  out.gray = to_gray(out.rgb);
  return out;
}

std::vector<double> color_features(const ImageBuffer& rgb, int grid_cols, int grid_rows) {
  rgb.validate();
  if (rgb.channels != 3) throw InvalidImage("color features need an RGB image");
  if (grid_cols < 1 || grid_rows < 1 || grid_cols > rgb.width || grid_rows > rgb.height)
    throw std::invalid_argument("color_features: bad grid geometry");

  std::array<double, 3> totals{};
  const int blocks = grid_cols * grid_rows;
  std::vector<std::array<double, 3>> sums(blocks, {0.0, 0.0, 0.0});
  std::vector<double> counts(blocks, 0.0);
  for (int by = 0; by < grid_rows; ++by) {
    const int y0 = by * rgb.height / grid_rows;
    const int y1 = (by + 1) * rgb.height / grid_rows;
    for (int bx = 0; bx < grid_cols; ++bx) {
      const int x0 = bx * rgb.width / grid_cols;
      const int x1 = (bx + 1) * rgb.width / grid_cols;
      const int b = by * grid_cols + bx;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x)
          for (int c = 0; c < 3; ++c) sums[b][c] += rgb.at(x, y, c);
      counts[b] = static_cast<double>(x1 - x0) * (y1 - y0);
    }
  }
  for (const auto& s : sums)
    for (int c = 0; c < 3; ++c) totals[c] += s[c];

  std::vector<double> out;
  out.reserve(6 * blocks);
  for (int b = 0; b < blocks; ++b) {
    for (int c = 0; c < 3; ++c) {
      out.push_back(sums[b][c] / counts[b]);
      out.push_back(totals[c] > 0.0 ? 100.0 * sums[b][c] / totals[c] : 0.0);
    }
  }
  return out;
}

namespace {

// Symmetric reflection: -1 -> 0, n -> n-1. Loops for kernels wider than
// the image.
int reflect(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

struct Field {
  int width = 0;
  int height = 0;
  std::vector<double> v;
  double& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
};

// Convolution along x (horizontal=true) or y with a centered 1-D kernel.
Field convolve_1d(const Field& in, const std::vector<double>& kernel, bool horizontal) {
  const int r = static_cast<int>(kernel.size()) / 2;
  Field out{in.width, in.height, std::vector<double>(in.v.size())};
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) {
      double acc = 0.0;
      for (int t = -r; t <= r; ++t) {
        const double k = kernel[t + r];
        acc += horizontal ? k * in.at(reflect(x - t, in.width), y)
                          : k * in.at(x, reflect(y - t, in.height));
      }
      out.at(x, y) = acc;
    }
  return out;
}

std::pair<double, double> abs_mean_std(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += std::abs(x);
  const double mean = sum / static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) {
    const double d = std::abs(x) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace

std::vector<double> texture_features(const ImageBuffer& gray, double sigma, int kernel_size) {
  gray.validate();
  if (gray.channels != 1) throw InvalidImage("texture features need a grayscale image");
  if (!(sigma > 0.0) || kernel_size < 1 || kernel_size % 2 == 0)
    throw std::invalid_argument("texture_features: bad filter parameters");

  const int r = kernel_size / 2;
  std::vector<double> smooth(kernel_size), deriv(kernel_size);
  double norm = 0.0;
  for (int t = -r; t <= r; ++t) {
    smooth[t + r] = std::exp(-(t * t) / (2.0 * sigma * sigma));
    norm += smooth[t + r];
  }
  for (int t = -r; t <= r; ++t) {
    smooth[t + r] /= norm;
    deriv[t + r] = -t / (sigma * sigma) * smooth[t + r];
  }

  Field img{gray.width, gray.height, std::vector<double>(gray.pixels.begin(), gray.pixels.end())};
  const Field gx = convolve_1d(convolve_1d(img, deriv, true), smooth, false);
  const Field gy = convolve_1d(convolve_1d(img, deriv, false), smooth, true);

  const double h = std::numbers::sqrt2 / 2.0;
  // (cos, sin) for 0, +45, -45, 90 degrees, exact where possible.
  const std::array<std::pair<double, double>, 4> steer{{{1.0, 0.0}, {h, h}, {h, -h}, {0.0, 1.0}}};

  std::vector<double> out;
  out.reserve(8);
  std::vector<double> resp(img.v.size());
  for (const auto& [c, s] : steer) {
    for (std::size_t i = 0; i < resp.size(); ++i) {
      if (s == 0.0)
        resp[i] = c * gx.v[i];
      else if (c == 0.0)
        resp[i] = s * gy.v[i];
      else
        resp[i] = c * gx.v[i] + s * gy.v[i];
    }
    const auto [mean, sd] = abs_mean_std(resp);
    out.push_back(mean);
    out.push_back(sd);
  }
  return out;
}

double zernike_radial(int n, int m, double rho) {
  m = std::abs(m);
  if (m > n || (n - m) % 2 != 0) throw std::invalid_argument("zernike_radial: invalid (n, m)");
  auto fact = [](int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  double sum = 0.0;
  for (int s = 0; s <= (n - m) / 2; ++s) {
    const double coeff = ((s % 2) ? -1.0 : 1.0) * fact(n - s) /
                         (fact(s) * fact((n + m) / 2 - s) * fact((n - m) / 2 - s));
    sum += coeff * std::pow(rho, n - 2 * s);
  }
  return sum;
}

std::pair<double, double> zernike_moment(const ImageBuffer& gray, ZernikeOrder order) {
  gray.validate();
  if (gray.channels != 1) throw InvalidImage("Zernike moments need a grayscale image");
  const double radius = std::min(gray.width, gray.height) / 2.0;
  const double cx = gray.width / 2.0;
  const double cy = gray.height / 2.0;
  std::complex<double> acc{0.0, 0.0};
  for (int y = 0; y < gray.height; ++y) {
    const double yn = (cy - (y + 0.5)) / radius;
    for (int x = 0; x < gray.width; ++x) {
      const double xn = (x + 0.5 - cx) / radius;
      const double rho = std::hypot(xn, yn);
      if (rho > 1.0) continue;
      const double theta = std::atan2(yn, xn);
      const double f = gray.at(x, y);
      acc += f * zernike_radial(order.n, order.m, rho) * std::polar(1.0, -order.m * theta);
    }
  }
  acc *= (order.n + 1) / std::numbers::pi / (radius * radius);
  return {acc.real(), acc.imag()};
}

std::vector<double> shape_features(const ImageBuffer& gray, std::span<const ZernikeOrder> orders) {
  gray.validate();
  std::vector<double> out;
  out.reserve(2 * orders.size());
  const ImageBuffer rotated = rotate90(gray);
  for (const ImageBuffer* img : {&gray, &rotated}) {
    for (const auto& o : orders) {
      const auto [re, im] = zernike_moment(*img, o);
      out.push_back(std::hypot(re, im));
    }
  }
  return out;
}

std::vector<double> shape_features(const ImageBuffer& gray) {
  const std::array<ZernikeOrder, 2> orders{{{2, 0}, {2, 2}}};
  return shape_features(gray, orders);
}

FeatureVector extract(const ImageBuffer& rgb, const ImageBuffer& gray, const FeatureConfig& config) {
  rgb.validate();
  gray.validate();
  if (rgb.channels != 3 || gray.channels != 1)
    throw InvalidImage("extract expects an RGB image and its grayscale version");
  if (rgb.width != gray.width || rgb.height != gray.height)
    throw InvalidImage("RGB and grayscale images differ in size");

  FeatureVector v = color_features(rgb, config.grid_cols, config.grid_rows);
  const auto tex = texture_features(gray, config.texture_sigma, config.texture_kernel);
  const auto shp = shape_features(gray, config.zernike_orders);
  v.insert(v.end(), tex.begin(), tex.end());
  v.insert(v.end(), shp.begin(), shp.end());
  return v;
}

FeatureVector extract_image(const ImageBuffer& image, const FeatureConfig& config) {
  const auto pre = preprocess(image, config.width, config.height);
  return extract(pre.rgb, pre.gray, config);
}

Normalizer::Normalizer(std::vector<double> mins, std::vector<double> maxs)
    : mins_(std::move(mins)), maxs_(std::move(maxs)) {
  if (mins_.size() != maxs_.size())
    throw std::invalid_argument("Normalizer: min/max length mismatch");
  for (std::size_t i = 0; i < mins_.size(); ++i)
    if (!(mins_[i] <= maxs_[i]))
      throw std::invalid_argument("Normalizer: min > max for feature " + std::to_string(i));
}

Normalizer Normalizer::fit(const Matrix& train) {
  if (train.empty() || train.cols() == 0)
    throw std::invalid_argument("Normalizer::fit: empty training matrix");
  std::vector<double> mins(train.row(0).begin(), train.row(0).end());
  std::vector<double> maxs = mins;
  for (std::size_t r = 1; r < train.rows(); ++r) {
    const auto row = train.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      mins[c] = std::min(mins[c], row[c]);
      maxs[c] = std::max(maxs[c], row[c]);
    }
  }
  return Normalizer(std::move(mins), std::move(maxs));
}

std::vector<double> Normalizer::apply(std::span<const double> v) const {
  if (v.size() != mins_.size())
    throw std::invalid_argument("Normalizer::apply: dimension mismatch");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double range = maxs_[i] - mins_[i];
    out[i] = range > 0.0 ? (v[i] - mins_[i]) / range : 0.0;
  }
  return out;
}

Matrix Normalizer::apply(const Matrix& m) const {
  Matrix out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.append_row(apply(m.row(r)));
  return out;
}

}  // namespace logosym
