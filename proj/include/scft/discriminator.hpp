#pragma once

#include <torch/torch.h>

namespace scft {

// 70x70 PatchGAN over the (image, sketch) channel concatenation. Raw scores,
// no final squashing; the least-squares objective consumes them directly.
struct PatchDiscriminatorImpl : torch::nn::Module {
  PatchDiscriminatorImpl();

  // image (B,3,H,W), sketch (B,1,H,W); returns (B,1,S,S) patch scores
  // (30x30 for 256-px inputs).
  torch::Tensor forward(torch::Tensor image, torch::Tensor sketch);

  torch::nn::Conv2d conv1{nullptr}, conv2{nullptr}, conv3{nullptr}, conv4{nullptr},
      conv5{nullptr};
  torch::nn::BatchNorm2d bn2{nullptr}, bn3{nullptr}, bn4{nullptr};
};
TORCH_MODULE(PatchDiscriminator);

}  // namespace scft
