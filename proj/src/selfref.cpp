#include "scft/selfref.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace scft {

AppearanceJitter sample_jitter(Rng& rng, double magnitude) {
  AppearanceJitter j;
  for (double& o : j.offset) o = rng.uniform(-magnitude, magnitude);
  return j;
}

RgbImage appearance_transform(const RgbImage& image, const AppearanceJitter& jitter) {
  if (image.empty()) throw std::invalid_argument("appearance_transform: empty image");
  RgbImage out(image.height, image.width);
  for (std::size_t i = 0; i < image.data.size(); i += 3) {
    for (int ch = 0; ch < 3; ++ch) {
      const double v = image.data[i + ch] + jitter.offset[ch];
      out.data[i + ch] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
  }
  return out;
}

int CorrespondenceGT::valid_count() const {
  return static_cast<int>(std::count_if(positive_index.begin(), positive_index.end(),
                                        [](int i) { return i >= 0; }));
}

CorrespondenceGT correspondence_ground_truth(const TpsParams& params, int grid_h,
                                             int grid_w) {
  if (grid_h <= 0 || grid_w <= 0)
    throw std::invalid_argument("correspondence_ground_truth: bad grid dims");
  if (params.forward_coeffs.empty())
    throw std::invalid_argument("correspondence_ground_truth: unsolved params");
  CorrespondenceGT gt;
  gt.grid_h = grid_h;
  gt.grid_w = grid_w;
  gt.positive_index.resize(static_cast<std::size_t>(grid_h) * grid_w, -1);
  for (int r = 0; r < grid_h; ++r) {
    for (int c = 0; c < grid_w; ++c) {
      const double x = (c + 0.5) / grid_w;
      const double y = (r + 0.5) / grid_h;
      const Point p = warp_point_forward(params, x, y);
      if (p[0] < 0.0 || p[0] >= 1.0 || p[1] < 0.0 || p[1] >= 1.0) continue;
      const int cc = std::min(static_cast<int>(p[0] * grid_w), grid_w - 1);
      const int rr = std::min(static_cast<int>(p[1] * grid_h), grid_h - 1);
      gt.positive_index[static_cast<std::size_t>(r) * grid_w + c] = rr * grid_w + cc;
    }
  }
  return gt;
}

CorrespondenceGT invalid_correspondence(int grid_h, int grid_w) {
  CorrespondenceGT gt;
  gt.grid_h = grid_h;
  gt.grid_w = grid_w;
  gt.positive_index.resize(static_cast<std::size_t>(grid_h) * grid_w, -1);
  return gt;
}

std::vector<TripletSample> sample_triplets(const CorrespondenceGT& gt, int n, Rng& rng) {
  std::vector<int> valid;
  for (std::size_t i = 0; i < gt.positive_index.size(); ++i)
    if (gt.positive_index[i] >= 0) valid.push_back(static_cast<int>(i));
  if (valid.empty()) {
    if (n > 0) std::cerr << "sample_triplets: no valid positives, returning empty list\n";
    return {};
  }
  const int cells = gt.grid_h * gt.grid_w;
  if (cells < 2) throw std::invalid_argument("sample_triplets: need >= 2 positions");
  std::vector<TripletSample> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int t = 0; t < n; ++t) {
    TripletSample s;
    s.query_index = valid[rng.uniform_int(valid.size())];
    s.positive_index = gt.positive_index[s.query_index];
    int neg = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(cells) - 1));
    if (neg >= s.positive_index) ++neg;
    s.negative_index = neg;
    out.push_back(s);
  }
  return out;
}

}  // namespace scft
