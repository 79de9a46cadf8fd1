#pragma once

#include <torch/torch.h>

#include "scft/image.hpp"

namespace scft {

// 3 x H x W float tensor in [-1, 1].
torch::Tensor to_network_tensor(const RgbImage& image);

// 1 x H x W float tensor in [-1, 1].
torch::Tensor to_network_tensor(const GrayImage& image);

// Inverse of to_network_tensor(RgbImage): expects 3 x H x W (or 1 x 3 x H x W),
// clamps to [-1, 1] and quantizes back to 8-bit.
RgbImage from_network_tensor(const torch::Tensor& tensor);

}  // namespace scft
