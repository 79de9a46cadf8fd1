#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace scft {

// 8-bit RGB image, row-major H*W*3. Values live on the 0..255 scale at the
// I/O boundary; conversion to the [-1,1] network representation happens in
// tensor_bridge.hpp.
struct RgbImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int h, int w, std::array<std::uint8_t, 3> fill = {0, 0, 0});

  std::uint8_t& at(int r, int c, int ch) { return data[(static_cast<std::size_t>(r) * width + c) * 3 + ch]; }
  std::uint8_t at(int r, int c, int ch) const { return data[(static_cast<std::size_t>(r) * width + c) * 3 + ch]; }
  bool empty() const { return height <= 0 || width <= 0; }
};

// Single-channel image with values in [0,1]; 1 = paper-white, 0 = ink.
struct GrayImage {
  int height = 0;
  int width = 0;
  std::vector<float> values;

  GrayImage() = default;
  GrayImage(int h, int w, float fill = 0.f)
      : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

  float& at(int r, int c) { return values[static_cast<std::size_t>(r) * width + c]; }
  float at(int r, int c) const { return values[static_cast<std::size_t>(r) * width + c]; }
  bool empty() const { return height <= 0 || width <= 0; }
};

// Rec.601 luma on the [0,1] scale.
GrayImage luminance(const RgbImage& image);

RgbImage gray_to_rgb(const GrayImage& image);

// Shorter side scaled to `side` (bilinear, both up and down), then center
// crop. Aspect ratio is never distorted.
RgbImage resize_center_crop(const RgbImage& image, int side);

RgbImage load_image_rgb(const std::string& path);     // throws on failure
GrayImage load_image_gray(const std::string& path);   // throws on failure
void save_png(const std::string& path, const RgbImage& image);
void save_png(const std::string& path, const GrayImage& image);    // 8-bit
void save_png16(const std::string& path, const std::vector<float>& values,
                int height, int width);  // values in [0,1] -> 16-bit gray

}  // namespace scft
