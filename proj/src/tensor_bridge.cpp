#include "scft/tensor_bridge.hpp"

#include <stdexcept>

namespace scft {

torch::Tensor to_network_tensor(const RgbImage& image) {
  if (image.empty()) throw std::invalid_argument("to_network_tensor: empty image");
  auto t = torch::empty({3, image.height, image.width}, torch::kFloat32);
  auto acc = t.accessor<float, 3>();
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c)
      for (int ch = 0; ch < 3; ++ch)
        acc[ch][r][c] = image.at(r, c, ch) / 127.5f - 1.f;
  return t;
}

torch::Tensor to_network_tensor(const GrayImage& image) {
  if (image.empty()) throw std::invalid_argument("to_network_tensor: empty image");
  auto t = torch::from_blob(const_cast<float*>(image.values.data()),
                            {1, image.height, image.width}, torch::kFloat32)
               .clone();
  return t * 2.f - 1.f;
}

RgbImage from_network_tensor(const torch::Tensor& tensor) {
  torch::Tensor t = tensor;
  if (t.dim() == 4) {
    if (t.size(0) != 1) throw std::invalid_argument("from_network_tensor: batch must be 1");
    t = t.squeeze(0);
  }
  if (t.dim() != 3 || t.size(0) != 3)
    throw std::invalid_argument("from_network_tensor: expected 3 x H x W");
  t = ((t.detach().clamp(-1, 1) + 1) * 127.5f).round().to(torch::kUInt8).contiguous();
  RgbImage out(static_cast<int>(t.size(1)), static_cast<int>(t.size(2)));
  auto acc = t.accessor<std::uint8_t, 3>();
  for (int r = 0; r < out.height; ++r)
    for (int c = 0; c < out.width; ++c)
      for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = acc[ch][r][c];
  return out;
}

}  // namespace scft
