#include "trainer.hpp"

namespace imagine {

Trainer::Trainer(const TrainConfig& config)
    : config_(config),
      model_(config),
      stm_(model_.states.size(), config.memory_capacity),
      opt_recognizer_(config.learning_rate),
      opt_decoder_(config.learning_rate),
      opt_deduction_(config.learning_rate),
      opt_discriminator_(config.learning_rate),
      collect_rng_(Rng(config.seed).child(kCollection)),
      sample_rng_(Rng(config.seed).child(kSampling)) {}

double Trainer::epsilon_for_episode(int episode) const {
  const double span = config_.epsilon_decay_fraction * config_.episodes;
  if (span <= 0.0 || episode >= span) return config_.epsilon_end;
  return config_.epsilon_start +
         (config_.epsilon_end - config_.epsilon_start) * (episode / span);
}

std::vector<Transition> Trainer::collect_episode(double epsilon) {
  const GridSpec& grid = config_.grid;
  const StateIndex& states = model_.states;
  std::vector<Transition> episode;
  Cell pos = grid.start;
  Screen screen = render(grid, pos);
  for (int t = 0; t < config_.steps_per_episode; ++t) {
    const int state = states.label(pos);
    const Action action = model_.qtable.select_action(state, epsilon, collect_rng_);
    if (!episode.empty()) episode.back().next_action = action;
    const StepResult result = step(grid, pos, action);
    Screen next_screen = render(grid, result.next);
    Transition tr{state,       screen,       action,       result.reward,
                  states.label(result.next), next_screen,  std::nullopt, result.done};
    model_.qtable.update(tr);
    episode.push_back(std::move(tr));
    pos = result.next;
    screen = std::move(next_screen);
    if (result.done) break;
  }
  // A cap-ended episode still records what the policy would do next.
  if (!episode.back().done && !episode.back().next_action) {
    episode.back().next_action =
        model_.qtable.select_action(states.label(pos), epsilon, collect_rng_);
  }
  for (const Transition& tr : episode) stm_.store(tr);
  return episode;
}

StepLosses Trainer::train_step() {
  const auto phase = [this](TrainPhase p) {
    if (phase_hook) phase_hook(p);
  };
  const std::vector<Transition> batch = stm_.sample_balanced(config_.batch_size, sample_rng_);
  const std::size_t n = batch.size();

  // Current and next screens together: goal states only ever appear as a
  // transition's next state, so both halves matter for label coverage.
  std::vector<Screen> screens;
  std::vector<int> labels;
  screens.reserve(2 * n);
  labels.reserve(2 * n);
  for (const Transition& t : batch) {
    screens.push_back(t.screen);
    labels.push_back(t.state);
  }
  for (const Transition& t : batch) {
    screens.push_back(t.next_screen);
    labels.push_back(t.next_state);
  }

  StepLosses losses;
  phase(TrainPhase::RecognizerStep);
  losses.recognizer = model_.recognizer.train_batch(screens, labels, opt_recognizer_);

  phase(TrainPhase::EncodeRoots);
  std::vector<RootVector> roots;
  roots.reserve(2 * n);
  for (const Screen& s : screens) roots.push_back(model_.recognizer.encode(s));

  phase(TrainPhase::MemoryFit);
  std::vector<std::vector<RootVector>> buckets(model_.states.size());
  for (std::size_t i = 0; i < roots.size(); ++i) buckets[labels[i]].push_back(roots[i]);
  for (int s = 0; s < model_.states.size(); ++s) {
    if (!buckets[s].empty()) model_.ltm.fit(s, buckets[s]);
  }

  phase(TrainPhase::DecoderStep);
  losses.decoder = model_.decoder.train_batch(roots, screens, opt_decoder_);

  phase(TrainPhase::DeductionStep);
  std::vector<RootVector> current_roots(roots.begin(), roots.begin() + n);
  std::vector<RootVector> next_roots(roots.begin() + n, roots.end());
  std::vector<Action> actions;
  actions.reserve(n);
  for (const Transition& t : batch) actions.push_back(t.action);
  losses.deduction =
      model_.deduction.train_batch(current_roots, actions, next_roots, opt_deduction_);

  phase(TrainPhase::DiscriminatorStep);
  std::vector<bool> dones;
  dones.reserve(n);
  for (const Transition& t : batch) dones.push_back(t.done);
  losses.discriminator = model_.discriminator.train_batch(next_roots, dones, opt_discriminator_);

  return losses;
}

double Trainer::recognizer_accuracy() const {
  const StateIndex& states = model_.states;
  int correct = 0;
  for (int s = 0; s < states.size(); ++s) {
    const Screen screen = render(config_.grid, states.cell(s));
    if (model_.recognizer.classify(screen).label == s) ++correct;
  }
  return static_cast<double>(correct) / states.size();
}

EpisodeMetrics Trainer::run_episode(int episode) {
  EpisodeMetrics row;
  row.episode = episode;
  row.epsilon = epsilon_for_episode(episode);
  const std::vector<Transition> transitions = collect_episode(row.epsilon);
  row.steps = static_cast<int>(transitions.size());
  for (const Transition& t : transitions) row.total_reward += t.reward;
  for (int k = 0; k < config_.train_steps_per_episode; ++k) {
    const StepLosses l = train_step();
    row.recognizer_loss += l.recognizer;
    row.decoder_loss += l.decoder;
    row.deduction_loss += l.deduction;
    row.discriminator_loss += l.discriminator;
  }
  const double inv = 1.0 / config_.train_steps_per_episode;
  row.recognizer_loss *= inv;
  row.decoder_loss *= inv;
  row.deduction_loss *= inv;
  row.discriminator_loss *= inv;
  row.recognizer_accuracy = recognizer_accuracy();
  return row;
}

void Trainer::run() {
  metrics_.reserve(config_.episodes);
  for (int episode = 0; episode < config_.episodes; ++episode) {
    metrics_.push_back(run_episode(episode));
  }
}

TrainResult train(const TrainConfig& config) {
  Trainer trainer(config);
  trainer.run();
  std::vector<EpisodeMetrics> metrics = trainer.metrics();
  return TrainResult{trainer.take_model(), std::move(metrics)};
}

}  // namespace imagine
