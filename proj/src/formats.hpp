#pragma once

#include <string>
#include <vector>

#include "engine.hpp"
#include "grid.hpp"
#include "trainer.hpp"

namespace imagine {

/// ASCII PGM ("P2"): header "P2", "W H", "255", then H rows of W integers,
/// each round(pixel * 255) with halves rounding up.
std::string pgm_string(const Screen& screen);
void write_pgm(const Screen& screen, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Header row plus one row per episode.
std::string metrics_csv(const std::vector<EpisodeMetrics>& metrics);

/// No header: one row per state, four action-value columns.
std::string action_values_csv(const ActionValues& values);

/// One JSON object per step: {"step", "label", "action", "done_prob",
/// "frame"}; action and frame are null when absent.
std::string trajectory_jsonl(const ImaginedTrajectory& traj,
                             const std::vector<std::string>& frame_paths = {});

/// Writes step_NNN.pgm frames into `dir` (created if needed); returns the
/// paths in step order.
std::vector<std::string> write_trajectory_frames(const ImaginedTrajectory& traj,
                                                 const std::string& dir);

}  // namespace imagine
