#pragma once

#include <torch/torch.h>

#include "scft/attention.hpp"
#include "scft/encoder.hpp"

namespace scft {

struct GeneratorConfig {
  AggregationMode aggregation = AggregationMode::kScft;
  int resblock_channels = 256;
  int num_resblocks = 4;
};

// conv-bn-relu-conv-bn with an identity skip, then relu.
struct ResidualBlockImpl : torch::nn::Module {
  explicit ResidualBlockImpl(int channels);
  torch::Tensor forward(torch::Tensor x);

  torch::nn::Conv2d conv1{nullptr}, conv2{nullptr};
  torch::nn::BatchNorm2d bn1{nullptr}, bn2{nullptr};
};
TORCH_MODULE(ResidualBlock);

struct GeneratorOutput {
  torch::Tensor image;      // (B, 3, H, W) in [-1, 1]
  torch::Tensor attention;  // (B, hw, hw); defined only in scft mode
  torch::Tensor queries;    // (B, d_v, hw) = W_q Vs; defined only in scft mode
  torch::Tensor keys;       // (B, d_v, hw) = W_k Vr; defined only in scft mode
};

// Full generator: twin encoders -> feature aggregation -> residual blocks ->
// U-net style decoder with skip connections from the sketch encoder.
struct GeneratorImpl : torch::nn::Module {
  explicit GeneratorImpl(GeneratorConfig config = {});

  // sketch (B,1,H,W), reference (B,3,H,W), both in [-1,1], H=W divisible by 16.
  GeneratorOutput forward(torch::Tensor sketch, torch::Tensor reference);

  GeneratorConfig config;
  Encoder sketch_encoder{nullptr}, reference_encoder{nullptr};
  Scft scft{nullptr};
  torch::nn::Conv2d entry{nullptr};
  torch::nn::ModuleList resblocks;
  torch::nn::ModuleList up_convs;  // one 3x3 conv per upsampling stage
  torch::nn::ModuleList up_bns;
  torch::nn::Conv2d to_rgb{nullptr};
};
TORCH_MODULE(Generator);

}  // namespace scft
