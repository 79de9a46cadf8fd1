#pragma once

#include <array>
#include <vector>

#include "scft/image.hpp"
#include "scft/rng.hpp"
#include "scft/tps.hpp"

namespace scft {

// Per-channel color offset on the 0..255 scale, each drawn from [-50, 50].
struct AppearanceJitter {
  std::array<double, 3> offset{0.0, 0.0, 0.0};
};

AppearanceJitter sample_jitter(Rng& rng, double magnitude = 50.0);

// Adds offset[c] to every pixel of channel c, clamped to [0, 255].
RgbImage appearance_transform(const RgbImage& image, const AppearanceJitter& jitter);

// Per-cell positive key indices on the attention grid. positive_index[i] is
// the reference cell the content of sketch cell i lands in, or -1 when the
// warped center falls outside the image.
struct CorrespondenceGT {
  int grid_h = 0;
  int grid_w = 0;
  std::vector<int> positive_index;

  int valid_count() const;
};

// Maps each cell center ((c+0.5)/grid_w, (r+0.5)/grid_h) forward through the
// warp and bins the result. Pure function of the params.
CorrespondenceGT correspondence_ground_truth(const TpsParams& params, int grid_h,
                                             int grid_w);

// All-invalid grid, used for zero-filled references.
CorrespondenceGT invalid_correspondence(int grid_h, int grid_w);

struct TripletSample {
  int query_index = -1;
  int positive_index = -1;
  int negative_index = -1;
};

// Query uniform over cells with a valid positive; negative uniform over all
// reference cells excluding the positive. Returns empty (with a warning on
// stderr) when the grid has no valid positives.
std::vector<TripletSample> sample_triplets(const CorrespondenceGT& gt, int n, Rng& rng);

// The self-supervised quadruple built from one source image.
struct TrainingSample {
  GrayImage sketch;        // I_s, from the un-jittered source
  RgbImage reference;      // I_r = s(a(I)), or the zero image
  RgbImage ground_truth;   // I_gt = a(I)
  CorrespondenceGT correspondence;
  bool zero_reference = false;
};

}  // namespace scft
