#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scft/image.hpp"

namespace scft {

struct KeypointPair {
  int x_s = 0, y_s = 0;  // keypoint in the source image
  int x_r = 0, y_r = 0;  // corresponding keypoint in the partner image
};

// One evaluation record: an image pair plus its annotated keypoint pairs.
struct PairRecord {
  std::string src;
  std::string ref;
  std::vector<KeypointPair> pairs;
};

// Accumulates squared error over patch windows so multiple records can be
// pooled into one score.
struct PatchMseAccumulator {
  double squared_error = 0.0;
  std::uint64_t count = 0;

  void add(const RgbImage& a, const RgbImage& b, const std::vector<KeypointPair>& pairs,
           int patch);
  double psnr() const;  // +inf when MSE is 0
};

// PSNR over the patch x patch windows centered on each keypoint pair
// (windows clipped at borders). patch must be odd, pairs non-empty.
double sc_psnr(const RgbImage& a, const RgbImage& b, const std::vector<KeypointPair>& pairs,
               int patch);

struct FidStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // sample covariance (n-1 denominator)
  std::int64_t count = 0;
};

// One-pass mean/covariance with compensated accumulation; merge is the
// associative running-moment combination.
class RunningMoments {
 public:
  explicit RunningMoments(int dim = 0);

  void add(const std::vector<double>& x);
  void merge(const RunningMoments& other);
  FidStats finalize() const;  // throws when count < 2
  std::int64_t count() const { return count_; }
  int dim() const { return dim_; }

 private:
  int dim_ = 0;
  std::int64_t count_ = 0;
  Eigen::VectorXd sum_;
  Eigen::VectorXd sum_comp_;   // Kahan compensation for sum_
  Eigen::MatrixXd m2_;         // centered second moment
  Eigen::VectorXd mean_;
};

// ||mu_a - mu_b||^2 + Tr(S_a + S_b - 2 (S_a S_b)^{1/2}); the matrix square
// root goes through an eigendecomposition of the symmetrized product, tiny
// negative eigenvalues (> -1e-6) are clipped to zero.
double fid(const FidStats& a, const FidStats& b);

using FeatureFn = std::function<std::vector<double>(const RgbImage&)>;

// Streams every readable image in the directory (sorted order) through the
// extractor, accumulating running statistics. Throws on an empty directory.
FidStats collect_fid_stats(const std::string& image_dir, const FeatureFn& extract);

// Line-delimited JSON records {"src":..., "ref":..., "pairs":[[xs,ys,xr,yr],...]}.
std::vector<PairRecord> load_pair_records(const std::string& path);
void save_pair_records(const std::string& path, const std::vector<PairRecord>& records);

// Maps a directory in the SPair-71k pair-annotation layout (JSON files with
// src_imname/trg_imname/src_kps/trg_kps) into PairRecords.
std::vector<PairRecord> import_spair(const std::string& annotation_dir);

}  // namespace scft
