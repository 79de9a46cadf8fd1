#include "scft/encoder.hpp"

#include <stdexcept>

namespace scft {

EncoderImpl::EncoderImpl(EncoderConfig cfg) : config(cfg) {
  int in_ch = config.in_channels;
  for (std::size_t i = 0; i < EncoderConfig::kOutChannels.size(); ++i) {
    const int out_ch = EncoderConfig::kOutChannels[i];
    convs->push_back(torch::nn::Conv2d(torch::nn::Conv2dOptions(in_ch, out_ch, EncoderConfig::kKernel)
                                           .stride(EncoderConfig::kStrides[i])
                                           .padding(EncoderConfig::kPad)));
    in_ch = out_ch;
  }
  register_module("convs", convs);
}

std::vector<torch::Tensor> EncoderImpl::forward(torch::Tensor x) {
  if (x.dim() == 3) x = x.unsqueeze(0);
  if (x.dim() != 4 || x.size(1) != config.in_channels)
    throw std::invalid_argument("Encoder: expected input with " +
                                std::to_string(config.in_channels) + " channels");
  if (x.size(2) % EncoderConfig::kTotalStride != 0 ||
      x.size(3) % EncoderConfig::kTotalStride != 0)
    throw std::invalid_argument("Encoder: spatial size must be divisible by 16");
  std::vector<torch::Tensor> pyramid;
  pyramid.reserve(convs->size());
  for (std::size_t i = 0; i < convs->size(); ++i) {
    x = convs[i]->as<torch::nn::Conv2d>()->forward(x);
    x = torch::leaky_relu(x, EncoderConfig::kLeakySlope);
    pyramid.push_back(x);
  }
  return pyramid;
}

torch::Tensor build_value_map(const std::vector<torch::Tensor>& pyramid) {
  if (pyramid.empty()) throw std::invalid_argument("build_value_map: empty pyramid");
  const auto& deepest = pyramid.back();
  const int64_t th = deepest.size(2);
  const int64_t tw = deepest.size(3);
  std::vector<torch::Tensor> pooled;
  pooled.reserve(pyramid.size());
  for (const auto& f : pyramid) {
    if (f.size(2) == th && f.size(3) == tw) {
      pooled.push_back(f);
      continue;
    }
    if (f.size(2) % th != 0 || f.size(3) % tw != 0)
      throw std::invalid_argument("build_value_map: level size not an integer multiple of the bottleneck");
    const int64_t factor = f.size(2) / th;
    pooled.push_back(torch::avg_pool2d(f, /*kernel_size=*/factor, /*stride=*/factor));
  }
  auto v = torch::cat(pooled, /*dim=*/1);
  return v.flatten(2);  // (B, d_v, hw)
}

}  // namespace scft
