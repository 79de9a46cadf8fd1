#pragma once

#include <string>

#include <torch/torch.h>

namespace scft {

enum class AggregationMode { kScft, kAdd, kAdain };

AggregationMode parse_aggregation_mode(const std::string& name);  // throws on unknown
std::string to_string(AggregationMode mode);

// The query/key/value projections of the feature-transfer module. Plain
// square matrices, no bias.
struct ScftImpl : torch::nn::Module {
  explicit ScftImpl(int64_t dim);

  int64_t dim;
  torch::Tensor w_q, w_k, w_v;
};
TORCH_MODULE(Scft);

// A[i][j] = softmax_j((W_q v_i^s) . (W_k v_j^r) / sqrt(d_v)).
// Value maps are (B, d_v, hw); the result is (B, hw_s, hw_r), row-stochastic.
torch::Tensor attention_matrix(const torch::Tensor& vs, const torch::Tensor& vr,
                               const torch::Tensor& w_q, const torch::Tensor& w_k);

// v*_i = sum_j A[i][j] (W_v v_j^r); result is (B, d_v, hw_s).
torch::Tensor context_transfer(const torch::Tensor& attention, const torch::Tensor& vr,
                               const torch::Tensor& w_v);

// c_i = v_i^s + v*_i.
torch::Tensor fuse(const torch::Tensor& vs, const torch::Tensor& context);

// Re-normalizes each channel of vs to match vr's per-channel mean/std over
// the hw positions.
torch::Tensor adain_remap(const torch::Tensor& vs, const torch::Tensor& vr,
                          double eps = 1e-5);

struct AggregateResult {
  torch::Tensor context;    // (B, d_v, hw)
  torch::Tensor attention;  // defined only for kScft
};

AggregateResult aggregate(const torch::Tensor& vs, const torch::Tensor& vr,
                          const Scft& scft, AggregationMode mode);

}  // namespace scft
