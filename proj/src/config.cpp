#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace imagine {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct LineContext {
  std::string_view source;
  int line = 0;

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << source << ":" << line << ": " << what;
    throw ParseError(os.str());
  }
};

long long parse_int(std::string_view v, const LineContext& ctx) {
  long long out = 0;
  const auto* begin = v.data();
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) ctx.fail("expected an integer, got '" + std::string(v) + "'");
  return out;
}

double parse_real(std::string_view v, const LineContext& ctx) {
  double out = 0.0;
  const auto* begin = v.data();
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) ctx.fail("expected a number, got '" + std::string(v) + "'");
  return out;
}

Cell parse_cell(std::string_view v, const LineContext& ctx) {
  const auto comma = v.find(',');
  if (comma == std::string_view::npos) ctx.fail("expected 'row,col', got '" + std::string(v) + "'");
  Cell c;
  c.row = static_cast<int>(parse_int(trim(v.substr(0, comma)), ctx));
  c.col = static_cast<int>(parse_int(trim(v.substr(comma + 1)), ctx));
  return c;
}

std::set<Cell> parse_walls(std::string_view v, const LineContext& ctx) {
  std::set<Cell> walls;
  while (!v.empty()) {
    const auto semi = v.find(';');
    const std::string_view part = trim(semi == std::string_view::npos ? v : v.substr(0, semi));
    if (!part.empty()) walls.insert(parse_cell(part, ctx));
    if (semi == std::string_view::npos) break;
    v.remove_prefix(semi + 1);
  }
  return walls;
}

}  // namespace

void TrainConfig::validate() const {
  grid.validate();
  if (episodes < 1) throw std::invalid_argument("train.episodes must be positive");
  if (steps_per_episode < 1) throw std::invalid_argument("step cap must be positive");
  if (batch_size < 1) throw std::invalid_argument("train.batch_size must be positive");
  if (train_steps_per_episode < 1)
    throw std::invalid_argument("train.train_steps_per_episode must be positive");
  if (!(q_alpha > 0.0 && q_alpha <= 1.0)) throw std::invalid_argument("q.alpha must be in (0,1]");
  if (!(q_gamma > 0.0 && q_gamma < 1.0)) throw std::invalid_argument("q.gamma must be in (0,1)");
  const auto eps_ok = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!eps_ok(epsilon_start) || !eps_ok(epsilon_end))
    throw std::invalid_argument("epsilon bounds must be in [0,1]");
  if (!(epsilon_decay_fraction >= 0.0 && epsilon_decay_fraction <= 1.0))
    throw std::invalid_argument("q.epsilon_decay_fraction must be in [0,1]");
  if (root_dim < 1) throw std::invalid_argument("nn.root_dim must be positive");
  if (hidden < 1) throw std::invalid_argument("nn.hidden must be positive");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("nn.lr must be positive");
  if (memory_capacity < 1) throw std::invalid_argument("memory.capacity must be positive");
  if (!(ema_rate > 0.0 && ema_rate <= 1.0)) throw std::invalid_argument("memory.ema_rate must be in (0,1]");
  if (imagine_max_steps < 1) throw std::invalid_argument("imagine.max_steps must be positive");
  if (!(imagine_done_threshold > 0.0 && imagine_done_threshold < 1.0))
    throw std::invalid_argument("imagine.done_threshold must be in (0,1)");
  if (imagine_temperature < 0.0) throw std::invalid_argument("imagine.temperature must be >= 0");
}

TrainConfig TrainConfig::maze5() {
  TrainConfig c;
  c.grid = GridSpec::maze5();
  return c;
}

TrainConfig parse_config(std::string_view text, std::string_view source_name) {
  TrainConfig config;
  LineContext ctx{source_name, 0};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++ctx.line;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) ctx.fail("expected 'key = value'");
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "grid.width") config.grid.width = static_cast<int>(parse_int(value, ctx));
    else if (key == "grid.height") config.grid.height = static_cast<int>(parse_int(value, ctx));
    else if (key == "grid.walls") config.grid.walls = parse_walls(value, ctx);
    else if (key == "grid.start") config.grid.start = parse_cell(value, ctx);
    else if (key == "grid.goal") config.grid.goal = parse_cell(value, ctx);
    else if (key == "train.episodes") config.episodes = static_cast<int>(parse_int(value, ctx));
    else if (key == "train.batch_size") config.batch_size = static_cast<int>(parse_int(value, ctx));
    else if (key == "train.train_steps_per_episode")
      config.train_steps_per_episode = static_cast<int>(parse_int(value, ctx));
    else if (key == "train.seed") config.seed = static_cast<std::uint64_t>(parse_int(value, ctx));
    else if (key == "q.alpha") config.q_alpha = parse_real(value, ctx);
    else if (key == "q.gamma") config.q_gamma = parse_real(value, ctx);
    else if (key == "q.epsilon_start") config.epsilon_start = parse_real(value, ctx);
    else if (key == "q.epsilon_end") config.epsilon_end = parse_real(value, ctx);
    else if (key == "q.epsilon_decay_fraction") config.epsilon_decay_fraction = parse_real(value, ctx);
    else if (key == "nn.root_dim") config.root_dim = static_cast<int>(parse_int(value, ctx));
    else if (key == "nn.hidden") config.hidden = static_cast<int>(parse_int(value, ctx));
    else if (key == "nn.lr") config.learning_rate = parse_real(value, ctx);
    else if (key == "memory.capacity") config.memory_capacity = static_cast<int>(parse_int(value, ctx));
    else if (key == "memory.ema_rate") config.ema_rate = parse_real(value, ctx);
    else if (key == "imagine.max_steps") config.imagine_max_steps = static_cast<int>(parse_int(value, ctx));
    else if (key == "imagine.done_threshold") config.imagine_done_threshold = parse_real(value, ctx);
    else if (key == "imagine.temperature") config.imagine_temperature = parse_real(value, ctx);
    else ctx.fail("unknown key '" + key + "'");
  }
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(source_name) + ": " + e.what());
  }
  return config;
}

TrainConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string serialize_config(const TrainConfig& config) {
  std::ostringstream os;
  os << "grid.width = " << config.grid.width << "\n";
  os << "grid.height = " << config.grid.height << "\n";
  os << "grid.walls = ";
  bool first = true;
  for (const Cell& w : config.grid.walls) {
    if (!first) os << ";";
    os << w.row << "," << w.col;
    first = false;
  }
  os << "\n";
  os << "grid.start = " << config.grid.start.row << "," << config.grid.start.col << "\n";
  os << "grid.goal = " << config.grid.goal.row << "," << config.grid.goal.col << "\n";
  os << "train.episodes = " << config.episodes << "\n";
  os << "train.batch_size = " << config.batch_size << "\n";
  os << "train.train_steps_per_episode = " << config.train_steps_per_episode << "\n";
  os << "train.seed = " << config.seed << "\n";
  os << "q.alpha = " << format_double(config.q_alpha) << "\n";
  os << "q.gamma = " << format_double(config.q_gamma) << "\n";
  os << "q.epsilon_start = " << format_double(config.epsilon_start) << "\n";
  os << "q.epsilon_end = " << format_double(config.epsilon_end) << "\n";
  os << "q.epsilon_decay_fraction = " << format_double(config.epsilon_decay_fraction) << "\n";
  os << "nn.root_dim = " << config.root_dim << "\n";
  os << "nn.hidden = " << config.hidden << "\n";
  os << "nn.lr = " << format_double(config.learning_rate) << "\n";
  os << "memory.capacity = " << config.memory_capacity << "\n";
  os << "memory.ema_rate = " << format_double(config.ema_rate) << "\n";
  os << "imagine.max_steps = " << config.imagine_max_steps << "\n";
  os << "imagine.done_threshold = " << format_double(config.imagine_done_threshold) << "\n";
  os << "imagine.temperature = " << format_double(config.imagine_temperature) << "\n";
  return os.str();
}

}  // namespace imagine
