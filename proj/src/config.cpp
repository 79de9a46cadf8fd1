#include "scft/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "scft/attention.hpp"

namespace scft {

using json = nlohmann::json;

void TrainConfig::validate() const {
  if (lr_g < 0 || lr_d < 0) throw std::invalid_argument("config: learning rates must be >= 0");
  if (beta1 < 0 || beta1 >= 1 || beta2 < 0 || beta2 >= 1)
    throw std::invalid_argument("config: betas must be in [0, 1)");
  if (batch_size <= 0) throw std::invalid_argument("config: batch_size must be positive");
  if (total_epochs <= 0) throw std::invalid_argument("config: total_epochs must be positive");
  if (constant_lr_epochs < 0 || constant_lr_epochs > total_epochs)
    throw std::invalid_argument("config: constant_lr_epochs must be in [0, total_epochs]");
  if (init_std < 0) throw std::invalid_argument("config: init_std must be >= 0");
  if (zero_ref_prob < 0 || zero_ref_prob > 1)
    throw std::invalid_argument("config: zero_ref_prob must be in [0, 1]");
  if (gamma < 0) throw std::invalid_argument("config: gamma must be >= 0");
  if (image_size <= 0 || image_size % 16 != 0)
    throw std::invalid_argument("config: image_size must be a positive multiple of 16");
  if (triplets_per_sample < 0)
    throw std::invalid_argument("config: triplets_per_sample must be >= 0");
  if (checkpoint_every <= 0) throw std::invalid_argument("config: checkpoint_every must be > 0");
  if (tps_grid_size < 2) throw std::invalid_argument("config: tps_grid_size must be >= 2");
  if (tps_max_disp < 0 || tps_max_disp >= 0.5)
    throw std::invalid_argument("config: tps_max_disp must be in [0, 0.5)");
  if (jitter_magnitude < 0)
    throw std::invalid_argument("config: jitter_magnitude must be >= 0");
  if (prefetch_batches <= 0) throw std::invalid_argument("config: prefetch_batches must be > 0");
  if (num_workers <= 0) throw std::invalid_argument("config: num_workers must be > 0");
  loss_weights.validate();
  parse_aggregation_mode(aggregation_mode);
  parse_gan_loss(gan_loss);
  xdog.validate();
}

namespace {

json weights_to_json(const LossWeights& w) {
  return {{"lambda_tr", w.lambda_tr},   {"lambda_rec", w.lambda_rec},
          {"lambda_adv", w.lambda_adv}, {"lambda_perc", w.lambda_perc},
          {"lambda_style", w.lambda_style}};
}

json xdog_to_json(const XDoGParams& p) {
  return {{"pre_blur_sigma", p.pre_blur_sigma}, {"sigma", p.sigma}, {"k", p.k},
          {"tau", p.tau},                       {"epsilon", p.epsilon}, {"phi", p.phi}};
}

void assign_known(const json& j, const std::set<std::string>& known, const char* where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.contains(key))
      throw std::invalid_argument(std::string("config: unknown key '") + key + "' in " + where);
  }
}

}  // namespace

std::string to_json(const TrainConfig& c) {
  json j{{"lr_g", c.lr_g},
         {"lr_d", c.lr_d},
         {"beta1", c.beta1},
         {"beta2", c.beta2},
         {"batch_size", c.batch_size},
         {"total_epochs", c.total_epochs},
         {"constant_lr_epochs", c.constant_lr_epochs},
         {"init_std", c.init_std},
         {"zero_ref_prob", c.zero_ref_prob},
         {"gamma", c.gamma},
         {"seed", c.seed},
         {"loss_weights", weights_to_json(c.loss_weights)},
         {"aggregation_mode", c.aggregation_mode},
         {"image_size", c.image_size},
         {"gan_loss", c.gan_loss},
         {"triplets_per_sample", c.triplets_per_sample},
         {"checkpoint_every", c.checkpoint_every},
         {"feature_net", c.feature_net},
         {"tps_grid_size", c.tps_grid_size},
         {"tps_max_disp", c.tps_max_disp},
         {"jitter_magnitude", c.jitter_magnitude},
         {"prefetch_batches", c.prefetch_batches},
         {"num_workers", c.num_workers},
         {"xdog", xdog_to_json(c.xdog)}};
  return j.dump(2);
}

TrainConfig train_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  static const std::set<std::string> known{
      "lr_g", "lr_d", "beta1", "beta2", "batch_size", "total_epochs", "constant_lr_epochs",
      "init_std", "zero_ref_prob", "gamma", "seed", "loss_weights", "aggregation_mode",
      "image_size", "gan_loss", "triplets_per_sample", "checkpoint_every", "feature_net",
      "tps_grid_size", "tps_max_disp", "jitter_magnitude", "prefetch_batches", "num_workers",
      "xdog"};
  assign_known(j, known, "config");

  TrainConfig c;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).template get<std::decay_t<decltype(field)>>();
  };
  get("lr_g", c.lr_g);
  get("lr_d", c.lr_d);
  get("beta1", c.beta1);
  get("beta2", c.beta2);
  get("batch_size", c.batch_size);
  get("total_epochs", c.total_epochs);
  get("constant_lr_epochs", c.constant_lr_epochs);
  get("init_std", c.init_std);
  get("zero_ref_prob", c.zero_ref_prob);
  get("gamma", c.gamma);
  get("seed", c.seed);
  get("aggregation_mode", c.aggregation_mode);
  get("image_size", c.image_size);
  get("gan_loss", c.gan_loss);
  get("triplets_per_sample", c.triplets_per_sample);
  get("checkpoint_every", c.checkpoint_every);
  get("feature_net", c.feature_net);
  get("tps_grid_size", c.tps_grid_size);
  get("tps_max_disp", c.tps_max_disp);
  get("jitter_magnitude", c.jitter_magnitude);
  get("prefetch_batches", c.prefetch_batches);
  get("num_workers", c.num_workers);

  if (j.contains("loss_weights")) {
    const auto& w = j.at("loss_weights");
    assign_known(w, {"lambda_tr", "lambda_rec", "lambda_adv", "lambda_perc", "lambda_style"},
                 "loss_weights");
    auto getw = [&w](const char* key, double& field) {
      if (w.contains(key)) field = w.at(key).get<double>();
    };
    getw("lambda_tr", c.loss_weights.lambda_tr);
    getw("lambda_rec", c.loss_weights.lambda_rec);
    getw("lambda_adv", c.loss_weights.lambda_adv);
    getw("lambda_perc", c.loss_weights.lambda_perc);
    getw("lambda_style", c.loss_weights.lambda_style);
  }
  if (j.contains("xdog")) {
    const auto& x = j.at("xdog");
    assign_known(x, {"pre_blur_sigma", "sigma", "k", "tau", "epsilon", "phi"}, "xdog");
    auto getx = [&x](const char* key, float& field) {
      if (x.contains(key)) field = x.at(key).get<float>();
    };
    getx("pre_blur_sigma", c.xdog.pre_blur_sigma);
    getx("sigma", c.xdog.sigma);
    getx("k", c.xdog.k);
    getx("tau", c.xdog.tau);
    getx("epsilon", c.xdog.epsilon);
    getx("phi", c.xdog.phi);
  }
  c.loss_weights.gamma = c.gamma;
  c.validate();
  return c;
}

TrainConfig load_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return train_config_from_json(text);
}

void save_train_config(const std::string& path, const TrainConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path);
  out << to_json(config) << "\n";
}

}  // namespace scft
