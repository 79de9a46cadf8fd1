#pragma once

#include <array>
#include <vector>

#include "scft/image.hpp"
#include "scft/rng.hpp"

namespace scft {

using Point = std::array<double, 2>;  // (x, y) in normalized [0,1] image units

// Thin-plate-spline warp defined by a g x g control lattice over the unit
// square and per-point displacements. Two coefficient sets are kept:
// `forward_coeffs` interpolates source -> source + displacement (used for
// correspondence ground truth), `backward_coeffs` interpolates the displaced
// points back to their sources (used when resampling the image).
struct TpsParams {
  int grid_size = 0;
  std::vector<Point> source_points;
  std::vector<Point> displacements;
  std::vector<Point> forward_coeffs;   // g^2 kernel weights + 3 affine rows
  std::vector<Point> backward_coeffs;  // same layout

  bool is_identity() const;
};

// Solves the interpolation for an explicit displacement field on the uniform
// lattice. Throws std::invalid_argument on bad sizes, std::runtime_error when
// the spline system cannot be solved.
TpsParams make_tps(int grid_size, const std::vector<Point>& displacements);

// Displacements drawn uniformly from [-max_disp, +max_disp] per coordinate.
// Resamples internally on a singular spline system, errors after 10 attempts.
TpsParams sample_tps(Rng& rng, int grid_size, double max_disp);

TpsParams identity_tps(int grid_size);

// Evaluates the forward map (source position -> warped position).
Point warp_point_forward(const TpsParams& params, double x, double y);

// Backward-mapped warp with bilinear sampling; samples that fall outside the
// source image take the fill color. Output size equals input size.
RgbImage tps_warp(const RgbImage& image, const TpsParams& params,
                  std::array<std::uint8_t, 3> fill = {255, 255, 255});

}  // namespace scft
