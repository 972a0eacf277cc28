#include "checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "errors.hpp"

namespace imagine {

namespace {

constexpr char kMagic[4] = {'I', 'M', 'G', 'N'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 24));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

void put_string(std::vector<std::uint8_t>& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

void put_section(std::vector<std::uint8_t>& out, const std::string& name,
                 const std::vector<std::uint32_t>& dims, std::span<const double> payload) {
  std::size_t expect = 1;
  for (std::uint32_t d : dims) expect *= d;
  if (expect != payload.size()) throw std::logic_error("section payload size mismatch");
  put_string(out, name);
  put_u32(out, static_cast<std::uint32_t>(dims.size()));
  for (std::uint32_t d : dims) put_u32(out, d);
  for (double v : payload) put_f64(out, v);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool at_end() const { return pos_ == bytes_.size(); }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + i];
    pos_ += 4;
    return v;
  }

  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes_[pos_ + i];
    pos_ += 8;
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  std::string string() {
    const std::uint32_t len = u32();
    need(len);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
    pos_ += len;
    return s;
  }

  void raw(char* dst, std::size_t n) {
    need(n);
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
  }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw ParseError("checkpoint: truncated data");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<double> ltm_rows(const LongTermMemory& ltm, bool variances) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(ltm.n_states()) * ltm.dim());
  const std::vector<double> zeros(ltm.dim(), 0.0);
  for (int s = 0; s < ltm.n_states(); ++s) {
    const std::vector<double>& row =
        ltm.fitted(s) ? (variances ? ltm.variance(s) : ltm.mean(s)) : zeros;
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> checkpoint_bytes(const Model& model) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, kCheckpointVersion);
  put_string(out, serialize_config(model.config));

  const auto net_section = [&](const std::string& name, const DenseNet& net) {
    const std::vector<double> params = net.parameters();
    put_section(out, name, {static_cast<std::uint32_t>(params.size())}, params);
  };
  net_section("recognizer", model.recognizer.net());
  net_section("decoder", model.decoder.net());
  net_section("deduction", model.deduction.net());
  net_section("discriminator", model.discriminator.net());

  const int n_states = model.states.size();
  std::vector<double> q;
  q.reserve(static_cast<std::size_t>(n_states) * kNumActions);
  for (const auto& row : model.qtable.values()) q.insert(q.end(), row.begin(), row.end());
  put_section(out, "qtable",
              {static_cast<std::uint32_t>(n_states), static_cast<std::uint32_t>(kNumActions)}, q);

  const auto dims = std::vector<std::uint32_t>{static_cast<std::uint32_t>(n_states),
                                               static_cast<std::uint32_t>(model.ltm.dim())};
  put_section(out, "ltm_means", dims, ltm_rows(model.ltm, false));
  put_section(out, "ltm_vars", dims, ltm_rows(model.ltm, true));
  return out;
}

Model model_from_checkpoint_bytes(std::span<const std::uint8_t> bytes) {
  Reader reader(bytes);
  char magic[4];
  reader.raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw ParseError("checkpoint: bad magic bytes");
  const std::uint32_t version = reader.u32();
  if (version != kCheckpointVersion)
    throw ParseError("checkpoint: unsupported version " + std::to_string(version));
  const std::string config_text = reader.string();
  const TrainConfig config = parse_config(config_text, "checkpoint config");
  Model model(config);

  const int n_states = model.states.size();
  const int dim = config.root_dim;
  std::vector<double> ltm_means;
  std::vector<double> ltm_vars;
  std::set<std::string> seen;

  while (!reader.at_end()) {
    const std::string name = reader.string();
    const std::uint32_t ndims = reader.u32();
    std::vector<std::uint32_t> dims(ndims);
    std::size_t count = 1;
    for (auto& d : dims) {
      d = reader.u32();
      count *= d;
    }
    std::vector<double> payload(count);
    for (double& v : payload) v = reader.f64();
    if (!seen.insert(name).second) throw ParseError("checkpoint: duplicate section '" + name + "'");

    const auto expect_count = [&](std::size_t expected) {
      if (count != expected)
        throw ParseError("checkpoint: section '" + name + "' has wrong payload size");
    };
    if (name == "recognizer") {
      expect_count(model.recognizer.net().parameter_count());
      model.recognizer.net().set_parameters(payload);
    } else if (name == "decoder") {
      expect_count(model.decoder.net().parameter_count());
      model.decoder.net().set_parameters(payload);
    } else if (name == "deduction") {
      expect_count(model.deduction.net().parameter_count());
      model.deduction.net().set_parameters(payload);
    } else if (name == "discriminator") {
      expect_count(model.discriminator.net().parameter_count());
      model.discriminator.net().set_parameters(payload);
    } else if (name == "qtable") {
      expect_count(static_cast<std::size_t>(n_states) * kNumActions);
      for (int s = 0; s < n_states; ++s) {
        for (int a = 0; a < kNumActions; ++a)
          model.qtable.values()[s][a] = payload[static_cast<std::size_t>(s) * kNumActions + a];
      }
    } else if (name == "ltm_means") {
      expect_count(static_cast<std::size_t>(n_states) * dim);
      ltm_means = std::move(payload);
    } else if (name == "ltm_vars") {
      expect_count(static_cast<std::size_t>(n_states) * dim);
      ltm_vars = std::move(payload);
    } else {
      throw ParseError("checkpoint: unknown section '" + name + "'");
    }
  }

  static const char* kRequired[] = {"recognizer", "decoder",  "deduction",
                                    "discriminator", "qtable", "ltm_means", "ltm_vars"};
  for (const char* name : kRequired) {
    if (!seen.contains(name)) throw ParseError(std::string("checkpoint: missing section '") + name + "'");
  }
  for (int s = 0; s < n_states; ++s) {
    const std::size_t off = static_cast<std::size_t>(s) * dim;
    model.ltm.load_row(s, std::span(ltm_means).subspan(off, dim),
                       std::span(ltm_vars).subspan(off, dim));
  }
  return model;
}

void save_checkpoint(const Model& model, const std::string& path) {
  const std::vector<std::uint8_t> bytes = checkpoint_bytes(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing checkpoint to '" + path + "'");
}

Model load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return model_from_checkpoint_bytes(bytes);
}

}  // namespace imagine
