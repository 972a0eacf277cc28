/* imagine — C API for the latent gridworld simulator.
 *
 * All functions return imn_status; IMN_OK means success. On failure the
 * output parameters are untouched and imn_last_error() describes what went
 * wrong (the message is thread-local and valid until the next failing call
 * on the same thread). Objects are opaque; free them with their matching
 * *_free function. NULL is always safe to pass to a *_free.
 */
#ifndef IMAGINE_IMAGINE_H
#define IMAGINE_IMAGINE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum imn_status {
  IMN_OK = 0,
  IMN_ERR_INVALID_ARGUMENT = 1,
  IMN_ERR_PARSE = 2,
  IMN_ERR_IO = 3,
  IMN_ERR_INTERNAL = 4
} imn_status;

typedef struct imn_config imn_config;
typedef struct imn_model imn_model;
typedef struct imn_trajectory imn_trajectory;

const char* imn_last_error(void);
const char* imn_status_name(imn_status status);

/* "Up", "Down", "Left", "Right"; NULL for anything else. */
const char* imn_action_name(int action);

/* ---- configuration ---- */

imn_status imn_config_defaults(imn_config** out);
imn_status imn_config_load(const char* path, imn_config** out);
void imn_config_free(imn_config* config);

/* ---- training and persistence ---- */

/* Runs a full training pass. When metrics_csv_path is non-NULL the
 * per-episode metrics table is written there. */
imn_status imn_train(const imn_config* config, const char* metrics_csv_path, imn_model** out);

imn_status imn_model_save(const imn_model* model, const char* path);
imn_status imn_model_load(const char* path, imn_model** out);
void imn_model_free(imn_model* model);

typedef struct imn_grid_info {
  int width;
  int height;
  int start_row;
  int start_col;
  int goal_row;
  int goal_col;
  int n_states;
} imn_grid_info;

imn_status imn_model_grid_info(const imn_model* model, imn_grid_info* out);

/* Writes the model's action-value table as CSV (one row per state). */
imn_status imn_model_qtable_csv(const imn_model* model, const char* path);

/* ---- imagination ---- */

typedef struct imn_imagine_opts {
  int max_steps;
  double done_threshold;
  double temperature;
  unsigned long long seed; /* only consulted when temperature > 0 */
  int reground;            /* nonzero: snap predicted roots to their class mean */
} imn_imagine_opts;

/* Fills the options with the model's configured defaults. */
imn_status imn_imagine_opts_init(const imn_model* model, imn_imagine_opts* out);

/* Rolls out a trajectory in latent space from the given start cell. */
imn_status imn_imagine(const imn_model* model, int start_row, int start_col,
                       const imn_imagine_opts* opts, imn_trajectory** out);

typedef struct imn_step {
  int index;
  int label;
  int action; /* 0..3, or -1 on a discriminator-terminated final step */
  double done_prob;
} imn_step;

#define IMN_TERMINATED_BY_DISCRIMINATOR 0
#define IMN_TERMINATED_BY_STEP_CAP 1

int imn_trajectory_length(const imn_trajectory* traj);
int imn_trajectory_termination(const imn_trajectory* traj);
imn_status imn_trajectory_step(const imn_trajectory* traj, int index, imn_step* out);

/* Renders the trajectory as JSONL (one object per step). When frames_dir is
 * non-NULL, decoded screens are written there as PGM files and referenced
 * from the JSON. Free the returned string with imn_string_free. */
imn_status imn_trajectory_jsonl(const imn_trajectory* traj, const char* frames_dir, char** out);

void imn_trajectory_free(imn_trajectory* traj);
void imn_string_free(char* s);

/* ---- evaluation and oracles ---- */

typedef struct imn_eval_report {
  int n_states;
  double recognizer_accuracy;   /* exact-match fraction over all states */
  int shortest_path_exact;      /* every greedy rollout takes the BFS-optimal length */
  double q_oracle_agreement;    /* Q argmax inside the optimal-action set */
  double deduction_fidelity;    /* one-step latent predictions recovering the next label */
  int discriminator_all_correct;
  double imagination_match_rate;
  int frames_consistent;
  double memory_generation_rate;
} imn_eval_report;

imn_status imn_evaluate(const imn_model* model, imn_eval_report* out);

/* Text report of the exact oracles for a grid: the BFS distance map and,
 * when q_csv_path is non-NULL, the value-iteration action values as CSV.
 * Free the returned string with imn_string_free. */
imn_status imn_oracle_report(const imn_config* config, const char* q_csv_path, char** out);

#ifdef __cplusplus
}
#endif

#endif /* IMAGINE_IMAGINE_H */
