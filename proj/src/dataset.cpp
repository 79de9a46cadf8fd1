#include "scft/dataset.hpp"

#include "scft/encoder.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace scft {

namespace fs = std::filesystem;

std::vector<std::string> Manifest::paths(Split split) const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (e.split == split) out.push_back(e.path);
  return out;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  Manifest manifest;
  std::set<std::string> seen_train, seen_val;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected `path,split`");
    const std::string file = line.substr(0, comma);
    const std::string split_token = line.substr(comma + 1);
    Split split;
    if (split_token == "train")
      split = Split::kTrain;
    else if (split_token == "val")
      split = Split::kVal;
    else
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": unknown split '" +
                               split_token + "'");
    if (!fs::exists(file))
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": missing file " + file);
    auto& mine = split == Split::kTrain ? seen_train : seen_val;
    auto& other = split == Split::kTrain ? seen_val : seen_train;
    if (other.contains(file))
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + file +
                               " appears in both splits");
    mine.insert(file);
    manifest.entries.push_back({file, split});
  }
  if (manifest.entries.empty())
    std::cerr << "load_manifest: " << path << " lists no images\n";
  return manifest;
}

Manifest split_directory(const std::string& dir, std::uint64_t seed, double train_fraction) {
  if (!fs::is_directory(dir))
    throw std::runtime_error("split_directory: not a directory: " + dir);
  if (train_fraction < 0.0 || train_fraction > 1.0)
    throw std::invalid_argument("split_directory: train_fraction must be in [0, 1]");
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  // Fisher-Yates with the portable Rng so the partition is stable across runs.
  Rng rng(splitmix64(seed ^ 0x5cf7u));
  for (std::size_t i = paths.size(); i > 1; --i)
    std::swap(paths[i - 1], paths[rng.uniform_int(i)]);
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(paths.size())));
  Manifest manifest;
  for (std::size_t i = 0; i < paths.size(); ++i)
    manifest.entries.push_back({paths[i], i < n_train ? Split::kTrain : Split::kVal});
  return manifest;
}

PairList load_pair_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pair list: " + path);
  PairList list;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected `sketch_path,reference_path`");
    const std::string sketch = line.substr(0, comma);
    const std::string reference = line.substr(comma + 1);
    for (const auto& file : {sketch, reference})
      if (!fs::exists(file))
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": missing file " +
                                 file);
    list.items.emplace_back(sketch, reference);
  }
  return list;
}

std::string resolve_cache_dir(const std::string& fallback) {
  if (const char* env = std::getenv("SCFT_CACHE_DIR"); env && *env) return env;
  return fallback;
}

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t sketch_cache_key(const RgbImage& image, const XDoGParams& p) {
  std::uint64_t h = fnv1a(image.data.data(), image.data.size());
  const float fields[6] = {p.pre_blur_sigma, p.sigma, p.k, p.tau, p.epsilon, p.phi};
  h = fnv1a(fields, sizeof(fields), h);
  const int dims[2] = {image.height, image.width};
  return fnv1a(dims, sizeof(dims), h);
}

}  // namespace

GrayImage sketch_with_cache(const RgbImage& image, const XDoGParams& params,
                            const std::string& cache_dir) {
  if (cache_dir.empty()) return extract_sketch(image, params);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  std::ostringstream name;
  name << std::hex << sketch_cache_key(image, params) << ".png";
  const fs::path cached = fs::path(cache_dir) / name.str();
  if (fs::exists(cached)) {
    try {
      return load_image_gray(cached.string());
    } catch (const std::runtime_error&) {
      // fall through and recompute
    }
  }
  GrayImage sketch = extract_sketch(image, params);
  try {
    save_png(cached.string(), sketch);
  } catch (const std::runtime_error& e) {
    static bool warned = false;
    if (!warned) {
      std::cerr << "sketch cache disabled: " << e.what() << "\n";
      warned = true;
    }
  }
  return sketch;
}

std::optional<TrainingSample> build_training_sample(const std::string& image_path,
                                                    const TrainConfig& config,
                                                    std::uint64_t global_seed,
                                                    std::uint64_t sample_id,
                                                    const std::string& cache_dir) {
  RgbImage source;
  try {
    source = load_image_rgb(image_path);
  } catch (const std::runtime_error& e) {
    std::cerr << "skipping unreadable image: " << image_path << " (" << e.what() << ")\n";
    return std::nullopt;
  }
  source = resize_center_crop(source, config.image_size);

  Rng rng(sample_seed(global_seed, sample_id));
  const AppearanceJitter jitter = sample_jitter(rng, config.jitter_magnitude);
  const TpsParams tps = sample_tps(rng, config.tps_grid_size, config.tps_max_disp);
  const bool zero_reference = rng.uniform() < config.zero_ref_prob;

  TrainingSample sample;
  sample.sketch = sketch_with_cache(source, config.xdog, cache_dir);
  sample.ground_truth = appearance_transform(source, jitter);
  const int grid = config.image_size / EncoderConfig::kTotalStride;
  if (zero_reference) {
    sample.reference = RgbImage(config.image_size, config.image_size, {0, 0, 0});
    sample.correspondence = invalid_correspondence(grid, grid);
    sample.zero_reference = true;
  } else {
    sample.reference = tps_warp(sample.ground_truth, tps);
    sample.correspondence = correspondence_ground_truth(tps, grid, grid);
  }
  return sample;
}

}  // namespace scft
