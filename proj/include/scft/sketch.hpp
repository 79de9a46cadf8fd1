#pragma once

#include "scft/image.hpp"

namespace scft {

// XDoG outline extraction parameters. The pre-blur suppresses superfluous
// edges before the difference-of-Gaussians response is thresholded.
struct XDoGParams {
  float pre_blur_sigma = 0.7f;
  float sigma = 0.3f;    // base Gaussian scale (px)
  float k = 4.5f;        // ratio of the two Gaussian scales
  float tau = 0.95f;     // DoG weight
  float epsilon = 0.0f;  // threshold on the filtered response
  float phi = 1e9f;      // ramp sharpness; large = near-hard threshold

  void validate() const;  // throws std::invalid_argument
};

// Separable Gaussian filter, reflect-101 border, radius ceil(3*sigma).
// sigma = 0 returns the input unchanged.
GrayImage gaussian_blur(const GrayImage& image, float sigma);

// Per-channel Gaussian blur of an RGB image.
RgbImage pre_blur(const RgbImage& image, float sigma);

// Luminance -> pre-blur -> u = G_sigma - tau * G_{k*sigma} ->
// 1 where u >= epsilon, else 1 + tanh(phi * (u - epsilon)); clamped to [0,1].
GrayImage extract_sketch(const RgbImage& image, const XDoGParams& params = {});

}  // namespace scft
