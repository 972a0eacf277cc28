#include "imagine/imagine.h"

#include <cstring>
#include <exception>
#include <sstream>
#include <string>

#include "checkpoint.hpp"
#include "config.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "formats.hpp"
#include "trainer.hpp"

using namespace imagine;

struct imn_config {
  TrainConfig config;
};

struct imn_model {
  Model model;
};

struct imn_trajectory {
  ImaginedTrajectory traj;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
imn_status guarded(Fn&& fn) {
  try {
    fn();
    return IMN_OK;
  } catch (const ParseError& e) {
    set_error(e.what());
    return IMN_ERR_PARSE;
  } catch (const IoError& e) {
    set_error(e.what());
    return IMN_ERR_IO;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return IMN_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return IMN_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return IMN_ERR_INTERNAL;
  }
}

imn_status require(bool ok, const char* what) {
  if (ok) return IMN_OK;
  set_error(what);
  return IMN_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* imn_last_error(void) { return g_last_error.c_str(); }

const char* imn_status_name(imn_status status) {
  switch (status) {
    case IMN_OK: return "ok";
    case IMN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case IMN_ERR_PARSE: return "parse error";
    case IMN_ERR_IO: return "io error";
    case IMN_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* imn_action_name(int action) {
  if (action < 0 || action >= kNumActions) return nullptr;
  return action_name(static_cast<Action>(action));
}

imn_status imn_config_defaults(imn_config** out) {
  if (const auto st = require(out != nullptr, "out must not be NULL"); st != IMN_OK) return st;
  return guarded([&] { *out = new imn_config{TrainConfig{}}; });
}

imn_status imn_config_load(const char* path, imn_config** out) {
  if (const auto st = require(path && out, "path and out must not be NULL"); st != IMN_OK) return st;
  return guarded([&] { *out = new imn_config{load_config_file(path)}; });
}

void imn_config_free(imn_config* config) { delete config; }

imn_status imn_train(const imn_config* config, const char* metrics_csv_path, imn_model** out) {
  if (const auto st = require(config && out, "config and out must not be NULL"); st != IMN_OK)
    return st;
  return guarded([&] {
    TrainResult result = train(config->config);
    if (metrics_csv_path) write_text_file(metrics_csv_path, metrics_csv(result.metrics));
    *out = new imn_model{std::move(result.model)};
  });
}

imn_status imn_model_save(const imn_model* model, const char* path) {
  if (const auto st = require(model && path, "model and path must not be NULL"); st != IMN_OK)
    return st;
  return guarded([&] { save_checkpoint(model->model, path); });
}

imn_status imn_model_load(const char* path, imn_model** out) {
  if (const auto st = require(path && out, "path and out must not be NULL"); st != IMN_OK) return st;
  return guarded([&] { *out = new imn_model{load_checkpoint(path)}; });
}

void imn_model_free(imn_model* model) { delete model; }

imn_status imn_model_grid_info(const imn_model* model, imn_grid_info* out) {
  if (const auto st = require(model && out, "model and out must not be NULL"); st != IMN_OK)
    return st;
  const GridSpec& grid = model->model.config.grid;
  out->width = grid.width;
  out->height = grid.height;
  out->start_row = grid.start.row;
  out->start_col = grid.start.col;
  out->goal_row = grid.goal.row;
  out->goal_col = grid.goal.col;
  out->n_states = model->model.states.size();
  return IMN_OK;
}

imn_status imn_model_qtable_csv(const imn_model* model, const char* path) {
  if (const auto st = require(model && path, "model and path must not be NULL"); st != IMN_OK)
    return st;
  return guarded([&] { write_text_file(path, action_values_csv(model->model.qtable.values())); });
}

imn_status imn_imagine_opts_init(const imn_model* model, imn_imagine_opts* out) {
  if (const auto st = require(model && out, "model and out must not be NULL"); st != IMN_OK)
    return st;
  const TrainConfig& cfg = model->model.config;
  out->max_steps = cfg.imagine_max_steps;
  out->done_threshold = cfg.imagine_done_threshold;
  out->temperature = cfg.imagine_temperature;
  out->seed = cfg.seed;
  out->reground = 0;
  return IMN_OK;
}

imn_status imn_imagine(const imn_model* model, int start_row, int start_col,
                       const imn_imagine_opts* opts, imn_trajectory** out) {
  if (const auto st = require(model && opts && out, "model, opts and out must not be NULL");
      st != IMN_OK)
    return st;
  return guarded([&] {
    const Model& m = model->model;
    const Cell start{start_row, start_col};
    if (!m.config.grid.in_bounds(start)) {
      std::ostringstream os;
      os << "start cell (" << start_row << "," << start_col << ") is out of bounds";
      throw std::invalid_argument(os.str());
    }
    if (m.config.grid.is_wall(start)) {
      std::ostringstream os;
      os << "start cell (" << start_row << "," << start_col << ") is a wall";
      throw std::invalid_argument(os.str());
    }
    ImagineOptions options;
    options.max_steps = opts->max_steps;
    options.done_threshold = opts->done_threshold;
    options.temperature = opts->temperature;
    options.reground = opts->reground != 0;
    Rng rng(opts->seed);
    ImaginedTrajectory traj = imagine::imagine(m.components(), m.states.label(start), options, rng);
    *out = new imn_trajectory{std::move(traj)};
  });
}

int imn_trajectory_length(const imn_trajectory* traj) {
  return traj ? static_cast<int>(traj->traj.steps.size()) : 0;
}

int imn_trajectory_termination(const imn_trajectory* traj) {
  if (!traj) return IMN_TERMINATED_BY_STEP_CAP;
  return traj->traj.termination == Termination::DiscriminatorStop
             ? IMN_TERMINATED_BY_DISCRIMINATOR
             : IMN_TERMINATED_BY_STEP_CAP;
}

imn_status imn_trajectory_step(const imn_trajectory* traj, int index, imn_step* out) {
  if (const auto st = require(traj && out, "traj and out must not be NULL"); st != IMN_OK) return st;
  if (const auto st = require(index >= 0 && index < imn_trajectory_length(traj),
                              "step index out of range");
      st != IMN_OK)
    return st;
  const ImaginedStep& step = traj->traj.steps[index];
  out->index = step.index;
  out->label = step.label;
  out->action = step.action ? static_cast<int>(*step.action) : -1;
  out->done_prob = step.done_prob;
  return IMN_OK;
}

imn_status imn_trajectory_jsonl(const imn_trajectory* traj, const char* frames_dir, char** out) {
  if (const auto st = require(traj && out, "traj and out must not be NULL"); st != IMN_OK) return st;
  return guarded([&] {
    std::vector<std::string> frames;
    if (frames_dir) frames = write_trajectory_frames(traj->traj, frames_dir);
    *out = dup_string(trajectory_jsonl(traj->traj, frames));
  });
}

void imn_trajectory_free(imn_trajectory* traj) { delete traj; }

void imn_string_free(char* s) { delete[] s; }

imn_status imn_evaluate(const imn_model* model, imn_eval_report* out) {
  if (const auto st = require(model && out, "model and out must not be NULL"); st != IMN_OK)
    return st;
  return guarded([&] {
    const EvalReport report = evaluate(model->model);
    out->n_states = report.n_states;
    out->recognizer_accuracy = report.recognizer_accuracy();
    out->shortest_path_exact = report.shortest_path_exact() ? 1 : 0;
    out->q_oracle_agreement = report.q_agreement();
    out->deduction_fidelity = report.deduction_fidelity();
    out->discriminator_all_correct = report.discriminator_all_correct ? 1 : 0;
    out->imagination_match_rate = report.imagination_match_rate();
    out->frames_consistent = report.frames_consistent ? 1 : 0;
    out->memory_generation_rate = report.memory_generation_rate();
  });
}

imn_status imn_oracle_report(const imn_config* config, const char* q_csv_path, char** out) {
  if (const auto st = require(config && out, "config and out must not be NULL"); st != IMN_OK)
    return st;
  return guarded([&] {
    const GridSpec& grid = config->config.grid;
    grid.validate();
    const std::vector<int> distances = bfs_distances(grid);
    std::ostringstream os;
    os << "grid " << grid.width << "x" << grid.height << ", start (" << grid.start.row << ","
       << grid.start.col << "), goal (" << grid.goal.row << "," << grid.goal.col << ")\n";
    os << "distance to goal:\n";
    for (int r = 0; r < grid.height; ++r) {
      for (int c = 0; c < grid.width; ++c) {
        const Cell cell{r, c};
        os << (c > 0 ? " " : "  ");
        if (grid.is_wall(cell)) {
          os << "#";
        } else if (distances[r * grid.width + c] == kUnreachable) {
          os << "inf";
        } else {
          os << distances[r * grid.width + c];
        }
      }
      os << "\n";
    }
    os << "start distance: ";
    const int sd = distances[grid.start.row * grid.width + grid.start.col];
    if (sd == kUnreachable) {
      os << "inf\n";
    } else {
      os << sd << "\n";
    }
    if (q_csv_path) {
      const ActionValues q = value_iteration(grid, config->config.q_gamma, 1e-9);
      write_text_file(q_csv_path, action_values_csv(q));
    }
    *out = dup_string(os.str());
  });
}

}  // extern "C"
