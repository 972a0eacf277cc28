#include "formats.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "config.hpp"
#include "errors.hpp"

namespace imagine {

std::string pgm_string(const Screen& screen) {
  std::ostringstream os;
  os << "P2\n" << screen.width << " " << screen.height << "\n255\n";
  for (int r = 0; r < screen.height; ++r) {
    for (int c = 0; c < screen.width; ++c) {
      if (c > 0) os << " ";
      os << static_cast<int>(std::floor(screen.at(r, c) * 255.0 + 0.5));
    }
    os << "\n";
  }
  return os.str();
}

void write_pgm(const Screen& screen, const std::string& path) {
  write_text_file(path, pgm_string(screen));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string metrics_csv(const std::vector<EpisodeMetrics>& metrics) {
  std::ostringstream os;
  os << "episode,steps,total_reward,epsilon,recognizer_loss,decoder_loss,"
        "deduction_loss,discriminator_loss,recognizer_accuracy\n";
  for (const EpisodeMetrics& m : metrics) {
    os << m.episode << "," << m.steps << "," << format_double(m.total_reward) << ","
       << format_double(m.epsilon) << "," << format_double(m.recognizer_loss) << ","
       << format_double(m.decoder_loss) << "," << format_double(m.deduction_loss) << ","
       << format_double(m.discriminator_loss) << "," << format_double(m.recognizer_accuracy)
       << "\n";
  }
  return os.str();
}

std::string action_values_csv(const ActionValues& values) {
  std::ostringstream os;
  for (const auto& row : values) {
    for (int a = 0; a < kNumActions; ++a) {
      if (a > 0) os << ",";
      os << format_double(row[a]);
    }
    os << "\n";
  }
  return os.str();
}

std::string trajectory_jsonl(const ImaginedTrajectory& traj,
                             const std::vector<std::string>& frame_paths) {
  if (!frame_paths.empty() && frame_paths.size() != traj.steps.size())
    throw std::invalid_argument("frame path count mismatch");
  std::ostringstream os;
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const ImaginedStep& step = traj.steps[i];
    nlohmann::ordered_json line;
    line["step"] = step.index;
    line["label"] = step.label;
    line["action"] = step.action ? nlohmann::ordered_json(action_name(*step.action))
                                 : nlohmann::ordered_json(nullptr);
    line["done_prob"] = step.done_prob;
    line["frame"] = frame_paths.empty() ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(frame_paths[i]);
    os << line.dump() << "\n";
  }
  return os.str();
}

std::vector<std::string> write_trajectory_frames(const ImaginedTrajectory& traj,
                                                 const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
  std::vector<std::string> paths;
  paths.reserve(traj.steps.size());
  for (const ImaginedStep& step : traj.steps) {
    char name[32];
    std::snprintf(name, sizeof(name), "step_%03d.pgm", step.index);
    const std::string path = dir + "/" + name;
    write_pgm(step.screen, path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace imagine
