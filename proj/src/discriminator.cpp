#include "scft/discriminator.hpp"

#include <stdexcept>

namespace scft {

namespace {
torch::nn::Conv2d patch_conv(int in, int out, int stride) {
  return torch::nn::Conv2d(torch::nn::Conv2dOptions(in, out, 4).stride(stride).padding(1));
}
}  // namespace

PatchDiscriminatorImpl::PatchDiscriminatorImpl() {
  conv1 = register_module("conv1", patch_conv(4, 64, 2));
  conv2 = register_module("conv2", patch_conv(64, 128, 2));
  bn2 = register_module("bn2", torch::nn::BatchNorm2d(128));
  conv3 = register_module("conv3", patch_conv(128, 256, 2));
  bn3 = register_module("bn3", torch::nn::BatchNorm2d(256));
  conv4 = register_module("conv4", patch_conv(256, 512, 1));
  bn4 = register_module("bn4", torch::nn::BatchNorm2d(512));
  conv5 = register_module("conv5", patch_conv(512, 1, 1));
}

torch::Tensor PatchDiscriminatorImpl::forward(torch::Tensor image, torch::Tensor sketch) {
  if (image.dim() == 3) image = image.unsqueeze(0);
  if (sketch.dim() == 3) sketch = sketch.unsqueeze(0);
  if (image.size(1) != 3 || sketch.size(1) != 1)
    throw std::invalid_argument("PatchDiscriminator: expected 3-channel image, 1-channel sketch");
  if (image.size(2) != sketch.size(2) || image.size(3) != sketch.size(3))
    throw std::invalid_argument("PatchDiscriminator: image/sketch size mismatch");
  auto x = torch::cat({image, sketch}, /*dim=*/1);
  x = torch::leaky_relu(conv1->forward(x), 0.2);
  x = torch::leaky_relu(bn2->forward(conv2->forward(x)), 0.2);
  x = torch::leaky_relu(bn3->forward(conv3->forward(x)), 0.2);
  x = torch::leaky_relu(bn4->forward(conv4->forward(x)), 0.2);
  return conv5->forward(x);
}

}  // namespace scft
