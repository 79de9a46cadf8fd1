#pragma once

#include <utility>
#include <vector>

#include <torch/torch.h>

#include "scft/feature_net.hpp"
#include "scft/selfref.hpp"

namespace scft {

struct LossWeights {
  double lambda_tr = 1.0;
  double lambda_rec = 30.0;
  double lambda_adv = 1.0;
  double lambda_perc = 0.01;
  double lambda_style = 50.0;
  double gamma = 12.0;  // triplet margin

  void validate() const;  // throws when any weight is negative
};

struct LossReport {
  double tr = 0, rec = 0, adv_g = 0, adv_d = 0, perc = 0, style = 0, total = 0;
};

enum class GanLoss { kLsgan, kBce };
GanLoss parse_gan_loss(const std::string& name);

// S(a, b) = (a . b) / sqrt(d_v)
torch::Tensor scaled_dot(const torch::Tensor& a, const torch::Tensor& b, int64_t d_v);

// max(0, -S(q, k_pos) + S(q, k_neg) + gamma)
torch::Tensor triplet_loss(const torch::Tensor& q, const torch::Tensor& k_pos,
                           const torch::Tensor& k_neg, double gamma, int64_t d_v);

// Per-image mean over that image's triplets, then mean over the images that
// have any; zero when no image does. queries/keys are the projected value
// maps (B, d_v, hw).
torch::Tensor triplet_loss_batch(const torch::Tensor& queries, const torch::Tensor& keys,
                                 const std::vector<std::vector<TripletSample>>& triplets,
                                 double gamma);

// Mean absolute difference over all elements.
torch::Tensor reconstruction_loss(const torch::Tensor& output, const torch::Tensor& gt);

// (loss_d, loss_g). LSGAN: loss_d = mean((d_real-1)^2) + mean(d_fake^2),
// loss_g = mean((d_fake-1)^2). The BCE form is the config-switchable
// cross-entropy alternative.
std::pair<torch::Tensor, torch::Tensor> adversarial_losses(const torch::Tensor& d_real,
                                                           const torch::Tensor& d_fake,
                                                           GanLoss kind = GanLoss::kLsgan);

// Sum over taps of mean-abs activation differences. Inputs are in [-1,1];
// renormalization to the net's expected statistics happens inside.
torch::Tensor perceptual_loss(const torch::Tensor& output, const torch::Tensor& gt,
                              FeatureNet& net);

// gram(phi) = phi phi^T / (H*W), per image; (B,C,H,W) -> (B,C,C).
torch::Tensor gram_matrix(const torch::Tensor& activation);

// Sum over the net's style taps of mean-abs gram differences.
torch::Tensor style_loss(const torch::Tensor& output, const torch::Tensor& gt,
                         FeatureNet& net);

torch::Tensor total_generator_loss(const torch::Tensor& tr, const torch::Tensor& rec,
                                   const torch::Tensor& adv_g, const torch::Tensor& perc,
                                   const torch::Tensor& style, const LossWeights& w);

double total_generator_loss(const LossReport& terms, const LossWeights& w);

}  // namespace scft
