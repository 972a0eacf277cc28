#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "model.hpp"

namespace imagine {

// Checkpoint layout, all integers little-endian:
//   "IMGN" | u32 version (1) | u32 len + config text |
//   sections until EOF, each: u32 len + name | u32 ndims + u32 dims... |
//   prod(dims) f64 payload, row-major.
// Sections: recognizer, decoder, deduction, discriminator (flat parameter
// vectors), qtable (S x 4), ltm_means and ltm_vars (S x d; all-zero variance
// rows mark never-fitted states).

inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> checkpoint_bytes(const Model& model);
Model model_from_checkpoint_bytes(std::span<const std::uint8_t> bytes);

void save_checkpoint(const Model& model, const std::string& path);
Model load_checkpoint(const std::string& path);

}  // namespace imagine
