#include "scft/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace scft {

namespace fs = std::filesystem;
using json = nlohmann::json;

void PatchMseAccumulator::add(const RgbImage& a, const RgbImage& b,
                              const std::vector<KeypointPair>& pairs, int patch) {
  if (pairs.empty()) throw std::invalid_argument("sc_psnr: empty keypoint pair list");
  if (patch <= 0 || patch % 2 == 0) throw std::invalid_argument("sc_psnr: patch must be odd");
  const int half = patch / 2;
  for (const auto& kp : pairs) {
    if (kp.x_s < 0 || kp.x_s >= a.width || kp.y_s < 0 || kp.y_s >= a.height ||
        kp.x_r < 0 || kp.x_r >= b.width || kp.y_r < 0 || kp.y_r >= b.height)
      throw std::invalid_argument("sc_psnr: keypoint outside image bounds");
    for (int dy = -half; dy <= half; ++dy) {
      for (int dx = -half; dx <= half; ++dx) {
        const int ys = kp.y_s + dy, xs = kp.x_s + dx;
        const int yr = kp.y_r + dy, xr = kp.x_r + dx;
        if (ys < 0 || ys >= a.height || xs < 0 || xs >= a.width) continue;
        if (yr < 0 || yr >= b.height || xr < 0 || xr >= b.width) continue;
        for (int ch = 0; ch < 3; ++ch) {
          const double d = static_cast<double>(a.at(ys, xs, ch)) - b.at(yr, xr, ch);
          squared_error += d * d;
          ++count;
        }
      }
    }
  }
}

double PatchMseAccumulator::psnr() const {
  if (count == 0) throw std::invalid_argument("sc_psnr: no patch pixels accumulated");
  const double mse = squared_error / static_cast<double>(count);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double sc_psnr(const RgbImage& a, const RgbImage& b, const std::vector<KeypointPair>& pairs,
               int patch) {
  PatchMseAccumulator acc;
  acc.add(a, b, pairs, patch);
  return acc.psnr();
}

RunningMoments::RunningMoments(int dim)
    : dim_(dim),
      sum_(Eigen::VectorXd::Zero(dim)),
      sum_comp_(Eigen::VectorXd::Zero(dim)),
      m2_(Eigen::MatrixXd::Zero(dim, dim)),
      mean_(Eigen::VectorXd::Zero(dim)) {}

void RunningMoments::add(const std::vector<double>& x) {
  if (dim_ == 0) {
    dim_ = static_cast<int>(x.size());
    sum_ = Eigen::VectorXd::Zero(dim_);
    sum_comp_ = Eigen::VectorXd::Zero(dim_);
    m2_ = Eigen::MatrixXd::Zero(dim_, dim_);
    mean_ = Eigen::VectorXd::Zero(dim_);
  }
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("RunningMoments: feature dim mismatch");
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), dim_);
  ++count_;
  const Eigen::VectorXd delta = v - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_.noalias() += delta * (v - mean_).transpose();
  // compensated plain sum, kept to make merged means order-insensitive
  for (int i = 0; i < dim_; ++i) {
    const double y = x[static_cast<std::size_t>(i)] - sum_comp_[i];
    const double t = sum_[i] + y;
    sum_comp_[i] = (t - sum_[i]) - y;
    sum_[i] = t;
  }
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  if (other.dim_ != dim_) throw std::invalid_argument("RunningMoments: merge dim mismatch");
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const Eigen::VectorXd delta = other.mean_ - mean_;
  const double n = na + nb;
  mean_ = mean_ + delta * (nb / n);
  m2_.noalias() += other.m2_ + (delta * delta.transpose()) * (na * nb / n);
  sum_ += other.sum_;
  sum_comp_ += other.sum_comp_;
  count_ += other.count_;
}

FidStats RunningMoments::finalize() const {
  if (count_ < 2) throw std::invalid_argument("RunningMoments: need at least 2 samples");
  FidStats stats;
  stats.count = count_;
  stats.mean = sum_ / static_cast<double>(count_);
  stats.cov = (m2_ + m2_.transpose()) / (2.0 * static_cast<double>(count_ - 1));
  return stats;
}

double fid(const FidStats& a, const FidStats& b) {
  if (a.mean.size() != b.mean.size())
    throw std::invalid_argument("fid: feature dim mismatch");
  if (!a.mean.allFinite() || !b.mean.allFinite() || !a.cov.allFinite() || !b.cov.allFinite())
    throw std::invalid_argument("fid: non-finite statistics");

  const Eigen::MatrixXd sa = (a.cov + a.cov.transpose()) / 2.0;
  const Eigen::MatrixXd sb = (b.cov + b.cov.transpose()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_a(sa);
  Eigen::VectorXd ev_a = es_a.eigenvalues();
  for (int i = 0; i < ev_a.size(); ++i) {
    if (ev_a[i] < -1e-6) throw std::invalid_argument("fid: covariance not PSD");
    ev_a[i] = std::sqrt(std::max(ev_a[i], 0.0));
  }
  const Eigen::MatrixXd sa_half =
      es_a.eigenvectors() * ev_a.asDiagonal() * es_a.eigenvectors().transpose();

  Eigen::MatrixXd prod = sa_half * sb * sa_half;
  prod = (prod + prod.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_p(prod);
  double tr_sqrt = 0.0;
  for (int i = 0; i < es_p.eigenvalues().size(); ++i) {
    const double ev = es_p.eigenvalues()[i];
    if (ev < -1e-6) throw std::invalid_argument("fid: product matrix not PSD");
    tr_sqrt += std::sqrt(std::max(ev, 0.0));
  }
  return (a.mean - b.mean).squaredNorm() + sa.trace() + sb.trace() - 2.0 * tr_sqrt;
}

FidStats collect_fid_stats(const std::string& image_dir, const FeatureFn& extract) {
  if (!fs::is_directory(image_dir))
    throw std::invalid_argument("collect_fid_stats: not a directory: " + image_dir);
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(image_dir))
    if (entry.is_regular_file()) paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  RunningMoments moments;
  for (const auto& path : paths) {
    RgbImage image;
    try {
      image = load_image_rgb(path);
    } catch (const std::runtime_error&) {
      continue;  // non-image files are skipped
    }
    moments.add(extract(image));
  }
  if (moments.count() == 0)
    throw std::invalid_argument("collect_fid_stats: no readable images in " + image_dir);
  return moments.finalize();
}

std::vector<PairRecord> load_pair_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pair file: " + path);
  std::vector<PairRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad record: " +
                               e.what());
    }
    PairRecord rec;
    rec.src = j.at("src").get<std::string>();
    rec.ref = j.at("ref").get<std::string>();
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 4)
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": pair entries must be [xs,ys,xr,yr]");
      rec.pairs.push_back({p[0].get<int>(), p[1].get<int>(), p[2].get<int>(), p[3].get<int>()});
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void save_pair_records(const std::string& path, const std::vector<PairRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write pair file: " + path);
  for (const auto& rec : records) {
    json pairs = json::array();
    for (const auto& p : rec.pairs) pairs.push_back({p.x_s, p.y_s, p.x_r, p.y_r});
    out << json{{"src", rec.src}, {"ref", rec.ref}, {"pairs", pairs}}.dump() << "\n";
  }
}

std::vector<PairRecord> import_spair(const std::string& annotation_dir) {
  if (!fs::is_directory(annotation_dir))
    throw std::invalid_argument("import_spair: not a directory: " + annotation_dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(annotation_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  std::vector<PairRecord> records;
  for (const auto& file : files) {
    std::ifstream in(file);
    json j;
    try {
      in >> j;
    } catch (const json::exception&) {
      continue;
    }
    if (!j.contains("src_imname") || !j.contains("trg_imname") || !j.contains("src_kps") ||
        !j.contains("trg_kps"))
      continue;
    PairRecord rec;
    rec.src = j.at("src_imname").get<std::string>();
    rec.ref = j.at("trg_imname").get<std::string>();
    const auto& src_kps = j.at("src_kps");
    const auto& trg_kps = j.at("trg_kps");
    const std::size_t n = std::min(src_kps.size(), trg_kps.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = src_kps[i];
      const auto& t = trg_kps[i];
      if (!s.is_array() || !t.is_array() || s.size() < 2 || t.size() < 2) continue;
      if (s[0].is_null() || t[0].is_null()) continue;
      rec.pairs.push_back({static_cast<int>(std::lround(s[0].get<double>())),
                           static_cast<int>(std::lround(s[1].get<double>())),
                           static_cast<int>(std::lround(t[0].get<double>())),
                           static_cast<int>(std::lround(t[1].get<double>()))});
    }
    if (!rec.pairs.empty()) records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace scft
