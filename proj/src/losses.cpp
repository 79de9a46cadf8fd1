#include "scft/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace scft {

void LossWeights::validate() const {
  for (double v : {lambda_tr, lambda_rec, lambda_adv, lambda_perc, lambda_style, gamma})
    if (v < 0.0) throw std::invalid_argument("LossWeights: weights must be >= 0");
}

GanLoss parse_gan_loss(const std::string& name) {
  if (name == "lsgan") return GanLoss::kLsgan;
  if (name == "bce") return GanLoss::kBce;
  throw std::invalid_argument("unknown gan_loss: " + name);
}

torch::Tensor scaled_dot(const torch::Tensor& a, const torch::Tensor& b, int64_t d_v) {
  return (a * b).sum(-1) / std::sqrt(static_cast<double>(d_v));
}

torch::Tensor triplet_loss(const torch::Tensor& q, const torch::Tensor& k_pos,
                           const torch::Tensor& k_neg, double gamma, int64_t d_v) {
  if (q.sizes() != k_pos.sizes() || q.sizes() != k_neg.sizes())
    throw std::invalid_argument("triplet_loss: dimension mismatch");
  auto margin = -scaled_dot(q, k_pos, d_v) + scaled_dot(q, k_neg, d_v) + gamma;
  return torch::clamp_min(margin, 0.0);
}

torch::Tensor triplet_loss_batch(const torch::Tensor& queries, const torch::Tensor& keys,
                                 const std::vector<std::vector<TripletSample>>& triplets,
                                 double gamma) {
  if (queries.dim() != 3 || keys.dim() != 3)
    throw std::invalid_argument("triplet_loss_batch: expected (B, d_v, hw)");
  if (static_cast<std::size_t>(queries.size(0)) != triplets.size())
    throw std::invalid_argument("triplet_loss_batch: batch size mismatch");
  const int64_t d_v = queries.size(1);
  auto total = torch::zeros({}, queries.options());
  int64_t images_with_triplets = 0;
  for (std::size_t b = 0; b < triplets.size(); ++b) {
    const auto& list = triplets[b];
    if (list.empty()) continue;
    std::vector<int64_t> qi, pi, ni;
    qi.reserve(list.size());
    pi.reserve(list.size());
    ni.reserve(list.size());
    for (const auto& t : list) {
      qi.push_back(t.query_index);
      pi.push_back(t.positive_index);
      ni.push_back(t.negative_index);
    }
    const auto opts = torch::TensorOptions().dtype(torch::kInt64);
    const auto q = queries[static_cast<int64_t>(b)]
                       .index_select(1, torch::tensor(qi, opts)).transpose(0, 1);
    const auto kp = keys[static_cast<int64_t>(b)]
                        .index_select(1, torch::tensor(pi, opts)).transpose(0, 1);
    const auto kn = keys[static_cast<int64_t>(b)]
                        .index_select(1, torch::tensor(ni, opts)).transpose(0, 1);
    total = total + triplet_loss(q, kp, kn, gamma, d_v).mean();
    ++images_with_triplets;
  }
  if (images_with_triplets == 0) return torch::zeros({}, queries.options());
  return total / static_cast<double>(images_with_triplets);
}

torch::Tensor reconstruction_loss(const torch::Tensor& output, const torch::Tensor& gt) {
  if (output.sizes() != gt.sizes())
    throw std::invalid_argument("reconstruction_loss: shape mismatch");
  return (output - gt).abs().mean();
}

std::pair<torch::Tensor, torch::Tensor> adversarial_losses(const torch::Tensor& d_real,
                                                           const torch::Tensor& d_fake,
                                                           GanLoss kind) {
  switch (kind) {
    case GanLoss::kLsgan: {
      auto loss_d = (d_real - 1).square().mean() + d_fake.square().mean();
      auto loss_g = (d_fake - 1).square().mean();
      return {loss_d, loss_g};
    }
    case GanLoss::kBce: {
      auto loss_d = torch::binary_cross_entropy_with_logits(d_real, torch::ones_like(d_real)) +
                    torch::binary_cross_entropy_with_logits(d_fake, torch::zeros_like(d_fake));
      auto loss_g = torch::binary_cross_entropy_with_logits(d_fake, torch::ones_like(d_fake));
      return {loss_d, loss_g};
    }
  }
  throw std::logic_error("unreachable");
}

torch::Tensor perceptual_loss(const torch::Tensor& output, const torch::Tensor& gt,
                              FeatureNet& net) {
  if (output.sizes() != gt.sizes())
    throw std::invalid_argument("perceptual_loss: shape mismatch");
  const auto a = net->taps_from_normalized(output.dim() == 3 ? output.unsqueeze(0) : output);
  const auto b = net->taps_from_normalized(gt.dim() == 3 ? gt.unsqueeze(0) : gt);
  auto loss = torch::zeros({}, output.options());
  for (std::size_t l = 0; l < a.size(); ++l) loss = loss + (a[l] - b[l]).abs().mean();
  return loss;
}

torch::Tensor gram_matrix(const torch::Tensor& activation) {
  auto x = activation.dim() == 3 ? activation.unsqueeze(0) : activation;
  if (x.dim() != 4) throw std::invalid_argument("gram_matrix: expected (B,C,H,W)");
  const auto b = x.size(0), c = x.size(1), h = x.size(2), w = x.size(3);
  auto flat = x.reshape({b, c, h * w});
  return torch::matmul(flat, flat.transpose(1, 2)) / static_cast<double>(h * w);
}

torch::Tensor style_loss(const torch::Tensor& output, const torch::Tensor& gt,
                         FeatureNet& net) {
  if (output.sizes() != gt.sizes())
    throw std::invalid_argument("style_loss: shape mismatch");
  const auto a = net->taps_from_normalized(output.dim() == 3 ? output.unsqueeze(0) : output);
  const auto b = net->taps_from_normalized(gt.dim() == 3 ? gt.unsqueeze(0) : gt);
  auto loss = torch::zeros({}, output.options());
  for (int tap : net->spec.style_taps) {
    if (tap < 0 || static_cast<std::size_t>(tap) >= a.size())
      throw std::runtime_error("style_loss: style tap out of range");
    loss = loss + (gram_matrix(a[tap]) - gram_matrix(b[tap])).abs().mean();
  }
  return loss;
}

torch::Tensor total_generator_loss(const torch::Tensor& tr, const torch::Tensor& rec,
                                   const torch::Tensor& adv_g, const torch::Tensor& perc,
                                   const torch::Tensor& style, const LossWeights& w) {
  return w.lambda_tr * tr + w.lambda_rec * rec + w.lambda_adv * adv_g + w.lambda_perc * perc +
         w.lambda_style * style;
}

double total_generator_loss(const LossReport& terms, const LossWeights& w) {
  return w.lambda_tr * terms.tr + w.lambda_rec * terms.rec + w.lambda_adv * terms.adv_g +
         w.lambda_perc * terms.perc + w.lambda_style * terms.style;
}

}  // namespace scft
