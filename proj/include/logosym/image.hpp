#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace logosym {

// Interleaved 8-bit raster, row-major, `channels` values per pixel.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 (gray) or 3 (RGB)
  std::vector<std::uint8_t> pixels;

  ImageBuffer() = default;
  ImageBuffer(int w, int h, int c, std::uint8_t fill = 0);

  std::uint8_t& at(int x, int y, int c = 0) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  // Throws InvalidImage when the layout invariants do not hold.
  void validate() const;

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

ImageBuffer transpose(const ImageBuffer& img);

// Exact 90 degree clockwise rotation of the pixel grid.
ImageBuffer rotate90(const ImageBuffer& img);

// Reads an 8-bit PNG or JPEG (detected from the file signature) and returns
// an RGB buffer. Gray sources are expanded to three channels; alpha is
// composited over white. Throws InvalidImage on unreadable input.
ImageBuffer read_image(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ImageBuffer& img);

}  // namespace logosym
