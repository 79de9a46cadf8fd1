#pragma once

#include <array>
#include <vector>

#include <torch/torch.h>

namespace scft {

// The ten-layer convolutional encoder shared by E_s and E_r (they differ only
// in input channel count). Stride product 16, so a 256-px input bottlenecks
// at 16 x 16.
struct EncoderConfig {
  int in_channels = 1;

  static constexpr std::array<int, 10> kOutChannels{16, 16, 32, 32, 64, 64, 128, 128, 256, 256};
  static constexpr std::array<int, 10> kStrides{1, 1, 2, 1, 2, 1, 2, 1, 2, 1};
  static constexpr int kKernel = 3;
  static constexpr int kPad = 1;
  static constexpr double kLeakySlope = 0.2;
  static constexpr int kTotalStride = 16;
  static constexpr int kValueDim = 992;  // sum of kOutChannels
};

struct EncoderImpl : torch::nn::Module {
  explicit EncoderImpl(EncoderConfig config = {});

  // Returns the 10 post-activation maps f^1..f^10.
  std::vector<torch::Tensor> forward(torch::Tensor x);

  EncoderConfig config;
  torch::nn::ModuleList convs;
};
TORCH_MODULE(Encoder);

// Average-pools every pyramid level to the deepest level's spatial size,
// concatenates along channels and flattens to (B, d_v, hw).
torch::Tensor build_value_map(const std::vector<torch::Tensor>& pyramid);

}  // namespace scft
