#include "scft/tps.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace scft {

namespace {

// U(r) = r^2 log r, written on r^2 to avoid the sqrt; U(0) = 0.
inline double tps_kernel_r2(double r2) {
  return r2 > 0.0 ? 0.5 * r2 * std::log(r2) : 0.0;
}

std::vector<Point> lattice(int grid_size) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(grid_size) * grid_size);
  for (int gy = 0; gy < grid_size; ++gy)
    for (int gx = 0; gx < grid_size; ++gx)
      pts.push_back({static_cast<double>(gx) / (grid_size - 1),
                     static_cast<double>(gy) / (grid_size - 1)});
  return pts;
}

// Solves [K P; P^T 0] [W; A] = [targets; 0]. Returns n+3 coefficient rows
// (n kernel weights followed by the affine part), or empty on failure.
std::vector<Point> solve_tps(const std::vector<Point>& sources,
                             const std::vector<Point>& targets) {
  const int n = static_cast<int>(sources.size());
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n + 3, n + 3);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + 3, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dx = sources[i][0] - sources[j][0];
      const double dy = sources[i][1] - sources[j][1];
      system(i, j) = tps_kernel_r2(dx * dx + dy * dy);
    }
    system(i, n) = 1.0;
    system(i, n + 1) = sources[i][0];
    system(i, n + 2) = sources[i][1];
    system(n, i) = 1.0;
    system(n + 1, i) = sources[i][0];
    system(n + 2, i) = sources[i][1];
    rhs(i, 0) = targets[i][0];
    rhs(i, 1) = targets[i][1];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) return {};
  Eigen::MatrixXd coeffs = lu.solve(rhs);
  // The interpolation must reproduce the control points.
  const double residual = (system.topRows(n) * coeffs - rhs.topRows(n)).cwiseAbs().maxCoeff();
  if (residual > 1e-8) return {};
  std::vector<Point> out(n + 3);
  for (int i = 0; i < n + 3; ++i) out[i] = {coeffs(i, 0), coeffs(i, 1)};
  return out;
}

Point eval_map(const std::vector<Point>& sources, const std::vector<Point>& coeffs,
               double x, double y) {
  const std::size_t n = sources.size();
  double ox = coeffs[n][0] + coeffs[n + 1][0] * x + coeffs[n + 2][0] * y;
  double oy = coeffs[n][1] + coeffs[n + 1][1] * x + coeffs[n + 2][1] * y;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x - sources[i][0];
    const double dy = y - sources[i][1];
    const double u = tps_kernel_r2(dx * dx + dy * dy);
    ox += coeffs[i][0] * u;
    oy += coeffs[i][1] * u;
  }
  return {ox, oy};
}

}  // namespace

bool TpsParams::is_identity() const {
  for (const Point& d : displacements)
    if (d[0] != 0.0 || d[1] != 0.0) return false;
  return true;
}

TpsParams make_tps(int grid_size, const std::vector<Point>& displacements) {
  if (grid_size < 2) throw std::invalid_argument("make_tps: grid_size must be >= 2");
  if (displacements.size() != static_cast<std::size_t>(grid_size) * grid_size)
    throw std::invalid_argument("make_tps: displacement count must be grid_size^2");
  TpsParams params;
  params.grid_size = grid_size;
  params.source_points = lattice(grid_size);
  params.displacements = displacements;
  std::vector<Point> displaced(params.source_points.size());
  for (std::size_t i = 0; i < displaced.size(); ++i)
    displaced[i] = {params.source_points[i][0] + displacements[i][0],
                    params.source_points[i][1] + displacements[i][1]};
  params.forward_coeffs = solve_tps(params.source_points, displaced);
  params.backward_coeffs = solve_tps(displaced, params.source_points);
  if (params.forward_coeffs.empty() || params.backward_coeffs.empty())
    throw std::runtime_error("make_tps: singular spline system");
  return params;
}

TpsParams sample_tps(Rng& rng, int grid_size, double max_disp) {
  if (grid_size < 2) throw std::invalid_argument("sample_tps: grid_size must be >= 2");
  if (max_disp < 0.0 || max_disp >= 0.5)
    throw std::invalid_argument("sample_tps: max_disp must be in [0, 0.5)");
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Point> disp(static_cast<std::size_t>(grid_size) * grid_size);
    for (Point& d : disp) {
      d[0] = rng.uniform(-max_disp, max_disp);
      d[1] = rng.uniform(-max_disp, max_disp);
    }
    try {
      return make_tps(grid_size, disp);
    } catch (const std::runtime_error&) {
      // displaced points degenerate; draw again
    }
  }
  throw std::runtime_error("sample_tps: singular spline system after 10 attempts");
}

TpsParams identity_tps(int grid_size) {
  return make_tps(grid_size,
                  std::vector<Point>(static_cast<std::size_t>(grid_size) * grid_size,
                                     Point{0.0, 0.0}));
}

Point warp_point_forward(const TpsParams& params, double x, double y) {
  return eval_map(params.source_points, params.forward_coeffs, x, y);
}

RgbImage tps_warp(const RgbImage& image, const TpsParams& params,
                  std::array<std::uint8_t, 3> fill) {
  if (image.empty()) throw std::invalid_argument("tps_warp: empty image");
  if (params.backward_coeffs.empty()) throw std::invalid_argument("tps_warp: unsolved params");
  const int h = image.height, w = image.width;
  std::vector<Point> displaced(params.source_points.size());
  for (std::size_t i = 0; i < displaced.size(); ++i)
    displaced[i] = {params.source_points[i][0] + params.displacements[i][0],
                    params.source_points[i][1] + params.displacements[i][1]};
  RgbImage out(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double x = (c + 0.5) / w;
      const double y = (r + 0.5) / h;
      const Point src = eval_map(displaced, params.backward_coeffs, x, y);
      const double px = src[0] * w - 0.5;
      const double py = src[1] * h - 0.5;
      if (px < 0.0 || px > w - 1 || py < 0.0 || py > h - 1) {
        out.at(r, c, 0) = fill[0];
        out.at(r, c, 1) = fill[1];
        out.at(r, c, 2) = fill[2];
        continue;
      }
      const int x0 = static_cast<int>(px);
      const int y0 = static_cast<int>(py);
      const int x1 = std::min(x0 + 1, w - 1);
      const int y1 = std::min(y0 + 1, h - 1);
      const double fx = px - x0;
      const double fy = py - y0;
      for (int ch = 0; ch < 3; ++ch) {
        const double v00 = image.at(y0, x0, ch);
        const double v01 = image.at(y0, x1, ch);
        const double v10 = image.at(y1, x0, ch);
        const double v11 = image.at(y1, x1, ch);
        const double v = (1 - fy) * ((1 - fx) * v00 + fx * v01) +
                         fy * ((1 - fx) * v10 + fx * v11);
        out.at(r, c, ch) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return out;
}

}  // namespace scft
