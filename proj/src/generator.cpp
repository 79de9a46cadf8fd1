#include "scft/generator.hpp"

#include <stdexcept>

namespace scft {

ResidualBlockImpl::ResidualBlockImpl(int channels) {
  conv1 = register_module("conv1", torch::nn::Conv2d(torch::nn::Conv2dOptions(channels, channels, 3).stride(1).padding(1)));
  bn1 = register_module("bn1", torch::nn::BatchNorm2d(channels));
  conv2 = register_module("conv2", torch::nn::Conv2d(torch::nn::Conv2dOptions(channels, channels, 3).stride(1).padding(1)));
  bn2 = register_module("bn2", torch::nn::BatchNorm2d(channels));
}

torch::Tensor ResidualBlockImpl::forward(torch::Tensor x) {
  auto y = torch::relu(bn1->forward(conv1->forward(x)));
  y = bn2->forward(conv2->forward(y));
  return torch::relu(x + y);
}

namespace {

// Decoder stage widths; stage i consumes the encoder skip at the matching
// resolution (f^8, f^6, f^4, f^2 -> 128, 64, 32, 16 channels).
constexpr std::array<int, 4> kDecoderOut{128, 64, 32, 16};
constexpr std::array<int, 4> kSkipChannels{128, 64, 32, 16};
constexpr std::array<int, 4> kSkipLevels{7, 5, 3, 1};  // indices into the pyramid

}  // namespace

GeneratorImpl::GeneratorImpl(GeneratorConfig cfg) : config(cfg) {
  sketch_encoder = register_module("sketch_encoder", Encoder(EncoderConfig{1}));
  reference_encoder = register_module("reference_encoder", Encoder(EncoderConfig{3}));
  scft = register_module("scft", Scft(EncoderConfig::kValueDim));
  entry = register_module(
      "entry", torch::nn::Conv2d(torch::nn::Conv2dOptions(EncoderConfig::kValueDim,
                                                          config.resblock_channels, 1)));
  for (int i = 0; i < config.num_resblocks; ++i)
    resblocks->push_back(ResidualBlock(config.resblock_channels));
  register_module("resblocks", resblocks);

  int in_ch = config.resblock_channels;
  for (std::size_t i = 0; i < kDecoderOut.size(); ++i) {
    up_convs->push_back(torch::nn::Conv2d(
        torch::nn::Conv2dOptions(in_ch + kSkipChannels[i], kDecoderOut[i], 3).padding(1)));
    up_bns->push_back(torch::nn::BatchNorm2d(kDecoderOut[i]));
    in_ch = kDecoderOut[i];
  }
  register_module("up_convs", up_convs);
  register_module("up_bns", up_bns);
  to_rgb = register_module(
      "to_rgb", torch::nn::Conv2d(torch::nn::Conv2dOptions(kDecoderOut.back(), 3, 3).padding(1)));
}

GeneratorOutput GeneratorImpl::forward(torch::Tensor sketch, torch::Tensor reference) {
  if (sketch.dim() == 3) sketch = sketch.unsqueeze(0);
  if (reference.dim() == 3) reference = reference.unsqueeze(0);
  if (sketch.size(2) != reference.size(2) || sketch.size(3) != reference.size(3))
    throw std::invalid_argument("Generator: sketch/reference size mismatch");

  const auto sketch_pyramid = sketch_encoder->forward(sketch);
  const auto reference_pyramid = reference_encoder->forward(reference);
  const auto vs = build_value_map(sketch_pyramid);
  const auto vr = build_value_map(reference_pyramid);

  GeneratorOutput out;
  const auto agg = aggregate(vs, vr, scft, config.aggregation);
  if (config.aggregation == AggregationMode::kScft) {
    out.attention = agg.attention;
    out.queries = torch::matmul(scft->w_q, vs);
    out.keys = torch::matmul(scft->w_k, vr);
  }

  const auto& bottom = sketch_pyramid.back();
  auto x = agg.context.view({agg.context.size(0), agg.context.size(1), bottom.size(2),
                             bottom.size(3)});
  x = entry->forward(x);
  for (std::size_t i = 0; i < resblocks->size(); ++i)
    x = resblocks[i]->as<ResidualBlockImpl>()->forward(x);

  for (std::size_t i = 0; i < up_convs->size(); ++i) {
    x = torch::upsample_nearest2d(x, {x.size(2) * 2, x.size(3) * 2});
    x = torch::cat({x, sketch_pyramid[kSkipLevels[i]]}, /*dim=*/1);
    x = up_convs[i]->as<torch::nn::Conv2d>()->forward(x);
    x = up_bns[i]->as<torch::nn::BatchNorm2d>()->forward(x);
    x = torch::relu(x);
  }
  out.image = torch::tanh(to_rgb->forward(x));
  return out;
}

}  // namespace scft
