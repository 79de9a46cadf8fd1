#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scft/config.hpp"
#include "scft/selfref.hpp"

namespace scft {

enum class Split { kTrain, kVal };

struct ManifestEntry {
  std::string path;
  Split split = Split::kTrain;
};

struct Manifest {
  std::vector<ManifestEntry> entries;

  std::vector<std::string> paths(Split split) const;
};

// Parses line-delimited `path,split` records. Missing files and unknown split
// tokens are errors; a path listed in both splits is an error; an empty file
// yields an empty manifest with a warning.
Manifest load_manifest(const std::string& path);

// Deterministic seeded 90/10 (by default) partition of every readable image
// file directly inside the directory.
Manifest split_directory(const std::string& dir, std::uint64_t seed,
                         double train_fraction = 0.9);

// Line-delimited `sketch_path,reference_path` records for inference/eval.
struct PairList {
  std::vector<std::pair<std::string, std::string>> items;
};
PairList load_pair_list(const std::string& path);

// Resolves the sketch cache directory: SCFT_CACHE_DIR wins, then the
// configured fallback; empty disables caching.
std::string resolve_cache_dir(const std::string& fallback);

// XDoG with a disk cache keyed by (image bytes, params). cache_dir may be
// empty to disable caching.
GrayImage sketch_with_cache(const RgbImage& image, const XDoGParams& params,
                            const std::string& cache_dir);

// Builds the self-supervised quadruple for one image. Deterministic in
// (global_seed, sample_id); returns nullopt (with a logged warning) when the
// image cannot be read.
std::optional<TrainingSample> build_training_sample(const std::string& image_path,
                                                    const TrainConfig& config,
                                                    std::uint64_t global_seed,
                                                    std::uint64_t sample_id,
                                                    const std::string& cache_dir = "");

}  // namespace scft
