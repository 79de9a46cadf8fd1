#include "scft/feature_net.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "scft/tensor_io.hpp"

namespace scft {

using json = nlohmann::json;
using Layer = FeatureNetSpec::Layer;

namespace {

constexpr char kMagic[9] = "SCFTNET1";

Layer conv(int in, int out, int k = 3, int s = 1, int p = 1) {
  return Layer{Layer::Type::kConv, in, out, k, s, p};
}
Layer relu() { return Layer{Layer::Type::kRelu}; }
Layer maxpool() { return Layer{Layer::Type::kMaxPool, 0, 0, 2, 2, 0}; }

}  // namespace

FeatureNetSpec FeatureNetSpec::vgg19() {
  FeatureNetSpec spec;
  spec.name = "vgg19";
  spec.input_mean = {0.485, 0.456, 0.406};
  spec.input_std = {0.229, 0.224, 0.225};
  auto block = [&spec](int in, int out, int n) {
    spec.layers.push_back(conv(in, out));
    spec.layers.push_back(relu());
    for (int i = 1; i < n; ++i) {
      spec.layers.push_back(conv(out, out));
      spec.layers.push_back(relu());
    }
    spec.layers.push_back(maxpool());
  };
  block(3, 64, 2);
  block(64, 128, 2);
  block(128, 256, 4);
  block(256, 512, 4);
  spec.layers.push_back(conv(512, 512));
  spec.layers.push_back(relu());
  // relu{1..5}_1 = first relu of each block
  spec.tap_indices = {1, 6, 11, 20, 30};
  spec.style_taps = {1, 2, 3};
  return spec;
}

FeatureNetSpec FeatureNetSpec::toy(int w) {
  FeatureNetSpec spec;
  spec.name = "toy";
  spec.layers = {conv(3, w), relu(), conv(w, w, 3, 2), relu(), conv(w, 2 * w, 3, 2), relu(),
                 conv(2 * w, 2 * w, 3, 2), relu(), conv(2 * w, 4 * w, 3, 2), relu()};
  spec.tap_indices = {1, 3, 5, 7, 9};
  spec.style_taps = {1, 2, 3};
  return spec;
}

FeatureNetSpec FeatureNetSpec::toy_extractor(int feature_dim) {
  FeatureNetSpec spec;
  spec.name = "toy-extractor";
  spec.layers = {conv(3, 16, 3, 2), relu(), conv(16, 32, 3, 2), relu(),
                 conv(32, feature_dim, 3, 2), relu()};
  spec.tap_indices = {5};
  spec.style_taps = {};
  return spec;
}

FeatureNetImpl::FeatureNetImpl(FeatureNetSpec s) : spec(std::move(s)) {
  for (const auto& layer : spec.layers) {
    if (layer.type != Layer::Type::kConv) continue;
    convs->push_back(torch::nn::Conv2d(torch::nn::Conv2dOptions(layer.in, layer.out, layer.kernel)
                                           .stride(layer.stride)
                                           .padding(layer.pad)));
  }
  register_module("convs", convs);
}

std::vector<torch::Tensor> FeatureNetImpl::taps(torch::Tensor x) {
  if (x.dim() == 3) x = x.unsqueeze(0);
  std::vector<torch::Tensor> out;
  std::size_t conv_idx = 0;
  int idx = 0;
  for (const auto& layer : spec.layers) {
    switch (layer.type) {
      case Layer::Type::kConv:
        x = convs[conv_idx++]->as<torch::nn::Conv2d>()->forward(x);
        break;
      case Layer::Type::kRelu:
        x = torch::relu(x);
        break;
      case Layer::Type::kMaxPool:
        x = torch::max_pool2d(x, layer.kernel, layer.stride);
        break;
    }
    if (std::find(spec.tap_indices.begin(), spec.tap_indices.end(), idx) !=
        spec.tap_indices.end())
      out.push_back(x);
    ++idx;
  }
  return out;
}

std::vector<torch::Tensor> FeatureNetImpl::taps_from_normalized(const torch::Tensor& x) {
  auto x01 = (x + 1) * 0.5;
  auto mean = torch::tensor({static_cast<float>(spec.input_mean[0]),
                             static_cast<float>(spec.input_mean[1]),
                             static_cast<float>(spec.input_mean[2])})
                  .view({1, 3, 1, 1});
  auto std = torch::tensor({static_cast<float>(spec.input_std[0]),
                            static_cast<float>(spec.input_std[1]),
                            static_cast<float>(spec.input_std[2])})
                 .view({1, 3, 1, 1});
  return taps((x01 - mean) / std);
}

torch::Tensor FeatureNetImpl::features(const torch::Tensor& x01) {
  auto t = taps(x01.dim() == 3 ? x01.unsqueeze(0) : x01);
  if (t.empty()) throw std::runtime_error("FeatureNet: no taps defined");
  return torch::adaptive_avg_pool2d(t.back(), {1, 1}).flatten(1);
}

int64_t FeatureNetImpl::feature_dim() const {
  for (auto it = spec.layers.rbegin(); it != spec.layers.rend(); ++it)
    if (it->type == Layer::Type::kConv) return it->out;
  return 0;
}

FeatureNet make_random_feature_net(const FeatureNetSpec& spec, std::uint64_t seed) {
  torch::manual_seed(seed);
  FeatureNet net(spec);
  torch::NoGradGuard no_grad;
  for (auto& module : net->convs->children()) {
    if (auto* c = module->as<torch::nn::Conv2d>()) {
      const auto fan_in = c->weight.size(1) * c->weight.size(2) * c->weight.size(3);
      c->weight.normal_(0.0, std::sqrt(2.0 / static_cast<double>(fan_in)));
      c->bias.zero_();
    }
  }
  for (auto& p : net->parameters()) p.set_requires_grad(false);
  return net;
}

namespace {

json spec_to_json(const FeatureNetSpec& spec) {
  json layers = json::array();
  for (const auto& l : spec.layers) {
    switch (l.type) {
      case Layer::Type::kConv:
        layers.push_back({{"type", "conv"}, {"in", l.in}, {"out", l.out},
                          {"k", l.kernel}, {"s", l.stride}, {"p", l.pad}});
        break;
      case Layer::Type::kRelu:
        layers.push_back({{"type", "relu"}});
        break;
      case Layer::Type::kMaxPool:
        layers.push_back({{"type", "maxpool"}, {"k", l.kernel}, {"s", l.stride}});
        break;
    }
  }
  return json{{"name", spec.name},
              {"layers", layers},
              {"taps", spec.tap_indices},
              {"style_taps", spec.style_taps},
              {"input_mean", spec.input_mean},
              {"input_std", spec.input_std}};
}

FeatureNetSpec spec_from_json(const json& j) {
  FeatureNetSpec spec;
  spec.name = j.at("name").get<std::string>();
  for (const auto& l : j.at("layers")) {
    const auto type = l.at("type").get<std::string>();
    if (type == "conv")
      spec.layers.push_back(conv(l.at("in"), l.at("out"), l.at("k"), l.at("s"), l.at("p")));
    else if (type == "relu")
      spec.layers.push_back(relu());
    else if (type == "maxpool")
      spec.layers.push_back(Layer{Layer::Type::kMaxPool, 0, 0, l.at("k"), l.at("s"), 0});
    else
      throw std::runtime_error("feature net: unknown layer type " + type);
  }
  spec.tap_indices = j.at("taps").get<std::vector<int>>();
  spec.style_taps = j.at("style_taps").get<std::vector<int>>();
  const auto mean = j.at("input_mean").get<std::vector<double>>();
  const auto std = j.at("input_std").get<std::vector<double>>();
  std::copy_n(mean.begin(), 3, spec.input_mean.begin());
  std::copy_n(std.begin(), 3, spec.input_std.begin());
  return spec;
}

}  // namespace

void save_feature_net(const std::string& path, const FeatureNet& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write feature net: " + path);
  out.write(kMagic, 8);
  write_string(out, spec_to_json(net->spec).dump());
  for (const auto& module : net->convs->children()) {
    auto* c = module->as<torch::nn::Conv2d>();
    write_tensor(out, c->weight);
    write_tensor(out, c->bias);
  }
  if (!out) throw std::runtime_error("failed writing feature net: " + path);
}

FeatureNet load_feature_net(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("feature net weights not found: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::string(magic, 8) != kMagic)
    throw std::runtime_error("not a feature net file: " + path);
  FeatureNetSpec spec;
  try {
    spec = spec_from_json(json::parse(read_string(in)));
  } catch (const json::exception& e) {
    throw std::runtime_error("corrupt feature net header in " + path + ": " + e.what());
  }
  FeatureNet net(spec);
  torch::NoGradGuard no_grad;
  for (auto& module : net->convs->children()) {
    auto* c = module->as<torch::nn::Conv2d>();
    c->weight.copy_(read_tensor(in));
    c->bias.copy_(read_tensor(in));
  }
  for (auto& p : net->parameters()) p.set_requires_grad(false);
  return net;
}

}  // namespace scft
