#pragma once

#include <array>
#include <string>
#include <vector>

#include <torch/torch.h>

namespace scft {

// Architecture description of a frozen convolutional feature extractor. The
// weights live in a model file; tests and the desk-scale smoke runs use small
// seeded instances, a converted VGG19 drops into the same container.
struct FeatureNetSpec {
  struct Layer {
    enum class Type { kConv, kRelu, kMaxPool };
    Type type = Type::kConv;
    int in = 0, out = 0, kernel = 3, stride = 1, pad = 1;
  };

  std::string name;
  std::vector<Layer> layers;
  std::vector<int> tap_indices;   // layer indices whose outputs are the taps
  std::vector<int> style_taps;    // indices into tap_indices used by the style loss
  std::array<double, 3> input_mean{0.5, 0.5, 0.5};  // on the [0,1] scale
  std::array<double, 3> input_std{0.5, 0.5, 0.5};

  // VGG19 conv prefix through relu5_1; taps at relu1_1..relu5_1, style taps
  // relu2_1..relu4_1, ImageNet input statistics.
  static FeatureNetSpec vgg19();

  // Small five-tap net for tests and desk-scale runs.
  static FeatureNetSpec toy(int base_width = 8);

  // Single-tap extractor ending in `feature_dim` channels (global-average
  // pooled for FID features).
  static FeatureNetSpec toy_extractor(int feature_dim = 64);
};

struct FeatureNetImpl : torch::nn::Module {
  explicit FeatureNetImpl(FeatureNetSpec spec);

  // Input on the [0,1] scale, (B,3,H,W); returns the tap activations.
  std::vector<torch::Tensor> taps(torch::Tensor x01);

  // Normalizes from [-1,1] to the net's expected statistics, then taps.
  std::vector<torch::Tensor> taps_from_normalized(const torch::Tensor& x);

  // Global-average-pooled last tap, (B, C); the FID embedding.
  torch::Tensor features(const torch::Tensor& x01);

  int64_t feature_dim() const;

  FeatureNetSpec spec;
  torch::nn::ModuleList convs;  // one entry per kConv layer, in order
};
TORCH_MODULE(FeatureNet);

// Seeded He-normal weights; parameters are frozen (requires_grad = false).
FeatureNet make_random_feature_net(const FeatureNetSpec& spec, std::uint64_t seed);

void save_feature_net(const std::string& path, const FeatureNet& net);

// Throws std::runtime_error mentioning the path when missing/corrupt.
FeatureNet load_feature_net(const std::string& path);

}  // namespace scft
