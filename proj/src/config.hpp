#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "grid.hpp"

namespace imagine {

/// Everything a training run depends on. Defaults reproduce the reference
/// 5x5 open-grid experiment.
struct TrainConfig {
  GridSpec grid = GridSpec::open5();

  int episodes = 300;
  int steps_per_episode = 200;  // collection cap, not a config key
  int batch_size = 32;
  int train_steps_per_episode = 8;
  std::uint64_t seed = 7;

  double q_alpha = 0.1;
  double q_gamma = 0.9;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.5;

  int root_dim = 32;
  int hidden = 64;
  double learning_rate = 1e-3;

  int memory_capacity = 64;
  double ema_rate = 0.05;

  int imagine_max_steps = 50;
  double imagine_done_threshold = 0.5;
  double imagine_temperature = 0.0;

  /// Throws std::invalid_argument when any field is unusable.
  void validate() const;

  static TrainConfig maze5();
};

/// Parses `key = value` lines ('#' starts a comment). Unknown keys and
/// malformed values raise ParseError carrying "<source>:<line>"; missing keys
/// keep their defaults. The result is validated.
TrainConfig parse_config(std::string_view text, std::string_view source_name);

/// Reads and parses a config file; IoError when the file cannot be read.
TrainConfig load_config_file(const std::string& path);

/// Canonical text form: every key in a fixed order, values formatted so they
/// parse back to identical bits. parse_config(serialize_config(c)) == c.
std::string serialize_config(const TrainConfig& config);

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double value);

}  // namespace imagine
