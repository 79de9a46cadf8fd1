#include "scft/attention.hpp"

#include <cmath>
#include <stdexcept>

namespace scft {

AggregationMode parse_aggregation_mode(const std::string& name) {
  if (name == "scft") return AggregationMode::kScft;
  if (name == "add") return AggregationMode::kAdd;
  if (name == "adain") return AggregationMode::kAdain;
  throw std::invalid_argument("unknown aggregation mode: " + name);
}

std::string to_string(AggregationMode mode) {
  switch (mode) {
    case AggregationMode::kScft: return "scft";
    case AggregationMode::kAdd: return "add";
    case AggregationMode::kAdain: return "adain";
  }
  throw std::logic_error("unreachable");
}

ScftImpl::ScftImpl(int64_t dim_) : dim(dim_) {
  w_q = register_parameter("w_q", torch::empty({dim, dim}));
  w_k = register_parameter("w_k", torch::empty({dim, dim}));
  w_v = register_parameter("w_v", torch::empty({dim, dim}));
  torch::NoGradGuard no_grad;
  w_q.normal_(0.0, 0.02);
  w_k.normal_(0.0, 0.02);
  w_v.normal_(0.0, 0.02);
}

namespace {

void check_value_map(const torch::Tensor& v, const char* what) {
  if (v.dim() != 3) throw std::invalid_argument(std::string(what) + ": expected (B, d_v, hw)");
}

}  // namespace

torch::Tensor attention_matrix(const torch::Tensor& vs, const torch::Tensor& vr,
                               const torch::Tensor& w_q, const torch::Tensor& w_k) {
  check_value_map(vs, "attention_matrix vs");
  check_value_map(vr, "attention_matrix vr");
  if (vs.size(1) != vr.size(1))
    throw std::invalid_argument("attention_matrix: d_v mismatch between vs and vr");
  if (w_q.size(0) != vs.size(1) || w_k.size(0) != vr.size(1))
    throw std::invalid_argument("attention_matrix: projection dim mismatch");
  const auto queries = torch::matmul(w_q, vs);  // (B, d_v, hw_s)
  const auto keys = torch::matmul(w_k, vr);     // (B, d_v, hw_r)
  const double scale = std::sqrt(static_cast<double>(vs.size(1)));
  auto logits = torch::matmul(queries.transpose(1, 2), keys) / scale;  // (B, hw_s, hw_r)
  return torch::softmax(logits, /*dim=*/-1);
}

torch::Tensor context_transfer(const torch::Tensor& attention, const torch::Tensor& vr,
                               const torch::Tensor& w_v) {
  check_value_map(vr, "context_transfer vr");
  if (attention.dim() != 3 || attention.size(2) != vr.size(2))
    throw std::invalid_argument("context_transfer: attention/value shape mismatch");
  const auto values = torch::matmul(w_v, vr);                       // (B, d_v, hw_r)
  return torch::matmul(values, attention.transpose(1, 2));          // (B, d_v, hw_s)
}

torch::Tensor fuse(const torch::Tensor& vs, const torch::Tensor& context) {
  if (vs.sizes() != context.sizes())
    throw std::invalid_argument("fuse: shape mismatch");
  return vs + context;
}

torch::Tensor adain_remap(const torch::Tensor& vs, const torch::Tensor& vr, double eps) {
  check_value_map(vs, "adain vs");
  check_value_map(vr, "adain vr");
  const auto mean_s = vs.mean(/*dim=*/2, /*keepdim=*/true);
  const auto std_s = vs.std(/*dim=*/2, /*unbiased=*/false, /*keepdim=*/true);
  const auto mean_r = vr.mean(/*dim=*/2, /*keepdim=*/true);
  const auto std_r = vr.std(/*dim=*/2, /*unbiased=*/false, /*keepdim=*/true);
  return (vs - mean_s) / (std_s + eps) * std_r + mean_r;
}

AggregateResult aggregate(const torch::Tensor& vs, const torch::Tensor& vr,
                          const Scft& scft, AggregationMode mode) {
  switch (mode) {
    case AggregationMode::kScft: {
      auto attention = attention_matrix(vs, vr, scft->w_q, scft->w_k);
      auto context = context_transfer(attention, vr, scft->w_v);
      return {fuse(vs, context), attention};
    }
    case AggregationMode::kAdd:
      if (vs.sizes() != vr.sizes()) throw std::invalid_argument("aggregate add: shape mismatch");
      return {vs + vr, torch::Tensor()};
    case AggregationMode::kAdain:
      return {adain_remap(vs, vr), torch::Tensor()};
  }
  throw std::logic_error("unreachable");
}

}  // namespace scft
