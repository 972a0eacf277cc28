#include "model.hpp"

namespace imagine {

namespace {

const TrainConfig& validated(const TrainConfig& cfg) {
  cfg.validate();
  return cfg;
}

Recognizer make_recognizer(const TrainConfig& cfg, int n_states) {
  Rng rng = Rng(cfg.seed).child(kRecognizerInit);
  return Recognizer(cfg.grid.width * cfg.grid.height, cfg.hidden, cfg.root_dim, n_states, rng);
}

Decoder make_decoder(const TrainConfig& cfg) {
  Rng rng = Rng(cfg.seed).child(kDecoderInit);
  return Decoder(cfg.root_dim, cfg.hidden, cfg.grid.height, cfg.grid.width, rng);
}

DeductionNet make_deduction(const TrainConfig& cfg) {
  Rng rng = Rng(cfg.seed).child(kDeductionInit);
  return DeductionNet(cfg.root_dim, cfg.hidden, rng);
}

Discriminator make_discriminator(const TrainConfig& cfg) {
  Rng rng = Rng(cfg.seed).child(kDiscriminatorInit);
  return Discriminator(cfg.root_dim, kDiscriminatorHidden, rng);
}

}  // namespace

Model::Model(const TrainConfig& cfg)
    : config(validated(cfg)),
      states(config.grid),
      recognizer(make_recognizer(config, states.size())),
      decoder(make_decoder(config)),
      ltm(states.size(), config.root_dim, config.ema_rate),
      deduction(make_deduction(config)),
      discriminator(make_discriminator(config)),
      qtable(states.size(), config.q_alpha, config.q_gamma) {}

}  // namespace imagine
