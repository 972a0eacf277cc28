#pragma once

#include "agent.hpp"
#include "config.hpp"
#include "deduction.hpp"
#include "discriminator.hpp"
#include "grid.hpp"
#include "memory.hpp"
#include "recognition.hpp"

namespace imagine {

// Seed stream ids, one per consumer; the order is part of the format.
enum RngStream : std::uint64_t {
  kRecognizerInit = 0,
  kDecoderInit = 1,
  kDeductionInit = 2,
  kDiscriminatorInit = 3,
  kCollection = 4,
  kSampling = 5,
};

inline constexpr int kDiscriminatorHidden = 32;

/// The frozen learned components an imagination rollout may touch. No grid,
/// no environment access.
struct Components {
  const Recognizer& recognizer;
  const Decoder& decoder;
  const LongTermMemory& ltm;
  const DeductionNet& deduction;
  const Discriminator& discriminator;
  const QTable& qtable;
};

/// The full trained artifact: configuration plus every learned component.
struct Model {
  TrainConfig config;
  StateIndex states;
  Recognizer recognizer;
  Decoder decoder;
  LongTermMemory ltm;
  DeductionNet deduction;
  Discriminator discriminator;
  QTable qtable;

  /// Fresh, untrained model with all dimensions and seeds derived from the
  /// config. The checkpoint loader starts from this skeleton too.
  explicit Model(const TrainConfig& cfg);

  Components components() const {
    return Components{recognizer, decoder, ltm, deduction, discriminator, qtable};
  }
};

}  // namespace imagine
