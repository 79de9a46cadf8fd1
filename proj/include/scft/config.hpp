#pragma once

#include <cstdint>
#include <string>

#include "scft/losses.hpp"
#include "scft/sketch.hpp"

namespace scft {

// Training hyperparameters. Config file keys mirror these field names 1:1;
// loss_weights and xdog are nested objects with the same rule.
struct TrainConfig {
  double lr_g = 1e-4;
  double lr_d = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  int batch_size = 16;
  int total_epochs = 200;
  int constant_lr_epochs = 100;
  double init_std = 0.02;
  double zero_ref_prob = 0.1;
  double gamma = 12.0;  // triplet margin, mirrored into loss_weights.gamma
  std::uint64_t seed = 20200505;
  LossWeights loss_weights;
  std::string aggregation_mode = "scft";

  int image_size = 256;           // network input side, divisible by 16
  std::string gan_loss = "lsgan";
  int triplets_per_sample = 64;
  int checkpoint_every = 10;      // epochs
  std::string feature_net;        // path; required when lambda_perc/style > 0
  int tps_grid_size = 5;
  double tps_max_disp = 0.1;
  double jitter_magnitude = 50.0;
  int prefetch_batches = 4;
  int num_workers = 1;
  XDoGParams xdog;

  void validate() const;  // throws std::invalid_argument with the field name
};

std::string to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const std::string& text);  // unknown keys rejected
TrainConfig load_train_config(const std::string& path);
void save_train_config(const std::string& path, const TrainConfig& config);

}  // namespace scft
