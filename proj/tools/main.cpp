// imagine — command-line front end. Talks to the core exclusively through
// the C API in imagine/imagine.h.

#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "imagine/imagine.h"

namespace {

int fail(imn_status status) {
  std::fprintf(stderr, "error: %s\n", imn_last_error());
  return status == IMN_OK ? 1 : static_cast<int>(status);
}

struct ConfigDeleter {
  void operator()(imn_config* c) const { imn_config_free(c); }
};
struct ModelDeleter {
  void operator()(imn_model* m) const { imn_model_free(m); }
};
struct TrajectoryDeleter {
  void operator()(imn_trajectory* t) const { imn_trajectory_free(t); }
};

using ConfigPtr = std::unique_ptr<imn_config, ConfigDeleter>;
using ModelPtr = std::unique_ptr<imn_model, ModelDeleter>;
using TrajectoryPtr = std::unique_ptr<imn_trajectory, TrajectoryDeleter>;

int run_train(const std::string& config_path, const std::string& out_path,
              const std::string& metrics_path) {
  imn_config* config = nullptr;
  if (const auto st = imn_config_load(config_path.c_str(), &config); st != IMN_OK) return fail(st);
  const ConfigPtr config_guard(config);
  imn_model* model = nullptr;
  if (const auto st =
          imn_train(config, metrics_path.empty() ? nullptr : metrics_path.c_str(), &model);
      st != IMN_OK)
    return fail(st);
  const ModelPtr model_guard(model);
  if (const auto st = imn_model_save(model, out_path.c_str()); st != IMN_OK) return fail(st);
  std::printf("wrote checkpoint to %s\n", out_path.c_str());
  if (!metrics_path.empty()) std::printf("wrote metrics to %s\n", metrics_path.c_str());
  return 0;
}

int run_imagine(const std::string& ckpt_path, int start_row, int start_col, bool have_start,
                int max_steps, double threshold, double temperature, unsigned long long seed,
                bool reground, const std::string& dump_path, const std::string& frames_dir) {
  imn_model* model = nullptr;
  if (const auto st = imn_model_load(ckpt_path.c_str(), &model); st != IMN_OK) return fail(st);
  const ModelPtr model_guard(model);

  imn_imagine_opts opts;
  if (const auto st = imn_imagine_opts_init(model, &opts); st != IMN_OK) return fail(st);
  if (max_steps > 0) opts.max_steps = max_steps;
  if (threshold >= 0.0) opts.done_threshold = threshold;
  if (temperature >= 0.0) opts.temperature = temperature;
  if (seed != 0) opts.seed = seed;
  opts.reground = reground ? 1 : 0;

  if (!have_start) {
    imn_grid_info info;
    if (const auto st = imn_model_grid_info(model, &info); st != IMN_OK) return fail(st);
    start_row = info.start_row;
    start_col = info.start_col;
  }
  imn_trajectory* traj = nullptr;
  if (const auto st = imn_imagine(model, start_row, start_col, &opts, &traj); st != IMN_OK)
    return fail(st);
  const TrajectoryPtr traj_guard(traj);

  char* jsonl = nullptr;
  if (const auto st =
          imn_trajectory_jsonl(traj, frames_dir.empty() ? nullptr : frames_dir.c_str(), &jsonl);
      st != IMN_OK)
    return fail(st);
  if (!dump_path.empty()) {
    std::FILE* f = std::fopen(dump_path.c_str(), "wb");
    if (!f) {
      imn_string_free(jsonl);
      std::fprintf(stderr, "error: cannot open '%s' for writing\n", dump_path.c_str());
      return 1;
    }
    std::fputs(jsonl, f);
    std::fclose(f);
  } else {
    std::fputs(jsonl, stdout);
  }
  imn_string_free(jsonl);

  const int length = imn_trajectory_length(traj);
  const char* how = imn_trajectory_termination(traj) == IMN_TERMINATED_BY_DISCRIMINATOR
                        ? "discriminator_stop"
                        : "max_steps";
  std::fprintf(stderr, "imagined %d step%s, termination %s\n", length, length == 1 ? "" : "s", how);
  return 0;
}

int run_eval(const std::string& ckpt_path, const std::string& q_csv, double min_q,
             double min_deduction, double min_imagination) {
  imn_model* model = nullptr;
  if (const auto st = imn_model_load(ckpt_path.c_str(), &model); st != IMN_OK) return fail(st);
  const ModelPtr model_guard(model);

  if (!q_csv.empty()) {
    if (const auto st = imn_model_qtable_csv(model, q_csv.c_str()); st != IMN_OK) return fail(st);
  }
  imn_eval_report report;
  if (const auto st = imn_evaluate(model, &report); st != IMN_OK) return fail(st);

  const int n = report.n_states;
  std::printf("recognizer_accuracy      %.4f (%d/%d)\n", report.recognizer_accuracy,
              static_cast<int>(report.recognizer_accuracy * n + 0.5), n);
  std::printf("q_oracle_agreement       %.4f\n", report.q_oracle_agreement);
  std::printf("deduction_fidelity       %.4f\n", report.deduction_fidelity);
  std::printf("discriminator_correct    %s\n", report.discriminator_all_correct ? "yes" : "no");
  std::printf("imagination_match_rate   %.4f\n", report.imagination_match_rate);
  std::printf("shortest_path_exact      %s\n", report.shortest_path_exact ? "yes" : "no");
  std::printf("memory_generation_rate   %.4f\n", report.memory_generation_rate);

  const bool pass = report.recognizer_accuracy == 1.0 && report.shortest_path_exact &&
                    report.q_oracle_agreement >= min_q &&
                    report.deduction_fidelity >= min_deduction &&
                    report.discriminator_all_correct &&
                    report.imagination_match_rate >= min_imagination &&
                    report.frames_consistent && report.memory_generation_rate == 1.0;
  std::printf("overall                  %s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int run_oracle(const std::string& config_path, const std::string& q_csv) {
  imn_config* config = nullptr;
  if (const auto st = imn_config_load(config_path.c_str(), &config); st != IMN_OK) return fail(st);
  const ConfigPtr config_guard(config);
  char* report = nullptr;
  if (const auto st = imn_oracle_report(config, q_csv.empty() ? nullptr : q_csv.c_str(), &report);
      st != IMN_OK)
    return fail(st);
  std::fputs(report, stdout);
  imn_string_free(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latent gridworld simulator: train world-model components, "
               "then roll out trajectories without the environment"};
  app.require_subcommand(1);

  std::string config_path;
  std::string ckpt_path;
  std::string metrics_path;
  std::string out_path;
  std::string dump_path;
  std::string frames_dir;
  std::string q_csv;
  std::string start_str;

  auto* train = app.add_subcommand("train", "train a model from a config file");
  train->add_option("--config", config_path, "config file")->required();
  train->add_option("--out", out_path, "checkpoint output path")->required();
  train->add_option("--metrics", metrics_path, "per-episode metrics CSV");

  int max_steps = 0;
  double threshold = -1.0;
  double temperature = -1.0;
  unsigned long long seed = 0;
  bool reground = false;
  auto* imagine = app.add_subcommand("imagine", "roll out a trajectory from a checkpoint");
  imagine->add_option("--ckpt", ckpt_path, "checkpoint path")->required();
  imagine->add_option("--start", start_str, "start cell as \"row,col\" (default: grid start)");
  imagine->add_option("--max-steps", max_steps, "action cap (default: from checkpoint)");
  imagine->add_option("--threshold", threshold, "done threshold (default: from checkpoint)");
  imagine->add_option("--temperature", temperature, "start-root temperature (default: from checkpoint)");
  imagine->add_option("--seed", seed, "sampling seed (used when temperature > 0)");
  imagine->add_flag("--reground", reground, "snap predicted roots to their class means");
  imagine->add_option("--dump", dump_path, "write JSONL here instead of stdout");
  imagine->add_option("--frames", frames_dir, "write per-step PGM frames into this directory");

  double min_q = 0.95;
  double min_deduction = 0.95;
  double min_imagination = 0.90;
  auto* eval = app.add_subcommand("eval", "score a checkpoint against the exact oracles");
  eval->add_option("--ckpt", ckpt_path, "checkpoint path")->required();
  eval->add_option("--q-csv", q_csv, "dump the trained Q-table as CSV");
  eval->add_option("--min-q-agreement", min_q, "Q/oracle agreement threshold");
  eval->add_option("--min-deduction", min_deduction, "deduction fidelity threshold");
  eval->add_option("--min-imagination", min_imagination, "imagination match-rate threshold");

  auto* oracle = app.add_subcommand("oracle", "print BFS distances and dump optimal action values");
  oracle->add_option("--config", config_path, "config file")->required();
  oracle->add_option("--q-csv", q_csv, "value-iteration Q-table CSV output");

  CLI11_PARSE(app, argc, argv);

  if (train->parsed()) return run_train(config_path, out_path, metrics_path);
  if (imagine->parsed()) {
    int row = 0;
    int col = 0;
    bool have_start = false;
    if (!start_str.empty()) {
      if (std::sscanf(start_str.c_str(), "%d,%d", &row, &col) != 2) {
        std::fprintf(stderr, "error: --start expects \"row,col\", got '%s'\n", start_str.c_str());
        return 1;
      }
      have_start = true;
    }
    return run_imagine(ckpt_path, row, col, have_start, max_steps, threshold, temperature, seed,
                       reground, dump_path, frames_dir);
  }
  if (eval->parsed()) return run_eval(ckpt_path, q_csv, min_q, min_deduction, min_imagination);
  if (oracle->parsed()) return run_oracle(config_path, q_csv);
  return 1;
}
