#include "scft/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace scft {

void XDoGParams::validate() const {
  if (sigma <= 0.f) throw std::invalid_argument("XDoGParams: sigma must be > 0");
  if (k <= 1.f) throw std::invalid_argument("XDoGParams: k must be > 1");
  if (phi <= 0.f) throw std::invalid_argument("XDoGParams: phi must be > 0");
  if (pre_blur_sigma < 0.f) throw std::invalid_argument("XDoGParams: pre_blur_sigma must be >= 0");
}

namespace {

std::vector<float> gaussian_kernel(float sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.f * sigma)));
  std::vector<float> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    k[i + radius] = static_cast<float>(w);
    sum += w;
  }
  for (float& w : k) w = static_cast<float>(w / sum);
  return k;
}

// reflect-101: ... 2 1 | 0 1 2 ... n-1 | n-2 n-3 ...
inline int reflect101(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

void blur_plane(const float* src, float* dst, int h, int w, float sigma) {
  if (sigma == 0.f) {
    std::copy_n(src, static_cast<std::size_t>(h) * w, dst);
    return;
  }
  const auto kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  std::vector<float> tmp(static_cast<std::size_t>(h) * w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] * src[static_cast<std::size_t>(r) * w + reflect101(c + i, w)];
      tmp[static_cast<std::size_t>(r) * w + c] = static_cast<float>(acc);
    }
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] * tmp[static_cast<std::size_t>(reflect101(r + i, h)) * w + c];
      dst[static_cast<std::size_t>(r) * w + c] = static_cast<float>(acc);
    }
  }
}

}  // namespace

GrayImage gaussian_blur(const GrayImage& image, float sigma) {
  if (image.empty()) throw std::invalid_argument("gaussian_blur: empty image");
  if (sigma < 0.f) throw std::invalid_argument("gaussian_blur: sigma must be >= 0");
  GrayImage out(image.height, image.width);
  blur_plane(image.values.data(), out.values.data(), image.height, image.width, sigma);
  return out;
}

RgbImage pre_blur(const RgbImage& image, float sigma) {
  if (image.empty()) throw std::invalid_argument("pre_blur: empty image");
  if (sigma < 0.f) throw std::invalid_argument("pre_blur: sigma must be >= 0");
  if (sigma == 0.f) return image;
  const std::size_t n = static_cast<std::size_t>(image.height) * image.width;
  std::vector<float> plane(n), blurred(n);
  RgbImage out(image.height, image.width);
  for (int ch = 0; ch < 3; ++ch) {
    for (std::size_t i = 0; i < n; ++i) plane[i] = image.data[3 * i + ch];
    blur_plane(plane.data(), blurred.data(), image.height, image.width, sigma);
    for (std::size_t i = 0; i < n; ++i)
      out.data[3 * i + ch] =
          static_cast<std::uint8_t>(std::lround(std::clamp(blurred[i], 0.f, 255.f)));
  }
  return out;
}

GrayImage extract_sketch(const RgbImage& image, const XDoGParams& params) {
  params.validate();
  if (image.empty()) throw std::invalid_argument("extract_sketch: empty image");
  GrayImage luma = luminance(image);
  if (params.pre_blur_sigma > 0.f) luma = gaussian_blur(luma, params.pre_blur_sigma);
  const GrayImage g1 = gaussian_blur(luma, params.sigma);
  const GrayImage g2 = gaussian_blur(luma, params.k * params.sigma);
  GrayImage out(image.height, image.width);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const float u = g1.values[i] - params.tau * g2.values[i];
    float v = u >= params.epsilon
                  ? 1.f
                  : 1.f + std::tanh(params.phi * (u - params.epsilon));
    out.values[i] = std::clamp(v, 0.f, 1.f);
  }
  return out;
}

}  // namespace scft
