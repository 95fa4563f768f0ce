#include "rtdrng/config.hpp"

#include <set>
#include <string>

#include "rtdrng/errors.hpp"
#include "rtdrng/io.hpp"

namespace rtd {

namespace {

using nlohmann::json;

// Reads one JSON object section, remembering which keys were used so that the
// leftovers can be reported.
class Section {
 public:
  Section(const json& doc, std::string path) : path_(std::move(path)) {
    if (doc.is_null()) return;
    if (!doc.is_object()) throw ConfigError(path_ + ": expected an object");
    doc_ = &doc;
  }

  bool has(const char* key) const { return doc_ && doc_->contains(key); }

  const json* raw(const char* key) {
    used_.insert(key);
    if (!doc_ || !doc_->contains(key)) return nullptr;
    return &(*doc_)[key];
  }

  void number(const char* key, double& out) {
    if (const json* v = raw(key)) {
      if (!v->is_number()) throw ConfigError(where(key) + ": expected a number");
      out = v->get<double>();
    }
  }

  void optional_number(const char* key, std::optional<double>& out) {
    if (const json* v = raw(key)) {
      if (!v->is_number()) throw ConfigError(where(key) + ": expected a number");
      out = v->get<double>();
    }
  }

  template <typename T>
  void count(const char* key, T& out) {
    if (const json* v = raw(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) {
        throw ConfigError(where(key) + ": expected a non-negative integer");
      }
      out = v->get<T>();
    }
  }

  void boolean(const char* key, bool& out) {
    if (const json* v = raw(key)) {
      if (!v->is_boolean()) throw ConfigError(where(key) + ": expected true or false");
      out = v->get<bool>();
    }
  }

  void string(const char* key, std::optional<std::string>& out) {
    if (const json* v = raw(key)) {
      if (!v->is_string()) throw ConfigError(where(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    if (!doc_) return;
    for (const auto& [key, value] : doc_->items()) {
      if (!used_.count(key)) throw ConfigError(where(key) + ": unknown key");
    }
  }

  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json* doc_ = nullptr;
  std::string path_;
  std::set<std::string> used_;
};

constexpr const char* kSuiteOverrideKeys[] = {
    "block_frequency_m",  "longest_run_m",       "longest_run_n",   "nonoverlapping_m", "nonoverlapping_block",
    "nonoverlapping_blocks", "overlapping_m",     "overlapping_block", "overlapping_blocks", "universal_l",
    "universal_q",        "universal_k",         "approx_entropy_m", "serial_m",         "linear_complexity_m",
    "linear_complexity_n",
};

template <typename T>
void apply_override(const json& overrides, const char* key, T& field) {
  if (overrides.contains(key)) field = overrides[key].get<T>();
}

}  // namespace

nist::TestParams SuiteSettings::params() const {
  auto p = nist::TestParams::for_length(sequence_length);
  p.alpha = alpha;
  apply_override(overrides, "block_frequency_m", p.block_frequency_m);
  apply_override(overrides, "longest_run_m", p.longest_run_m);
  apply_override(overrides, "longest_run_n", p.longest_run_n);
  apply_override(overrides, "nonoverlapping_m", p.nonoverlapping_m);
  apply_override(overrides, "nonoverlapping_block", p.nonoverlapping_block);
  apply_override(overrides, "nonoverlapping_blocks", p.nonoverlapping_blocks);
  apply_override(overrides, "overlapping_m", p.overlapping_m);
  apply_override(overrides, "overlapping_block", p.overlapping_block);
  apply_override(overrides, "overlapping_blocks", p.overlapping_blocks);
  apply_override(overrides, "universal_l", p.universal_l);
  apply_override(overrides, "universal_q", p.universal_q);
  apply_override(overrides, "universal_k", p.universal_k);
  apply_override(overrides, "approx_entropy_m", p.approx_entropy_m);
  apply_override(overrides, "serial_m", p.serial_m);
  apply_override(overrides, "linear_complexity_m", p.linear_complexity_m);
  apply_override(overrides, "linear_complexity_n", p.linear_complexity_n);
  return p;
}

PipelineConfig PipelineConfig::defaults() {
  PipelineConfig cfg;
  cfg.controller = ControllerState::defaults_for(cfg.device, cfg.pulse.amplitude);
  return cfg;
}

void PipelineConfig::validate() const {
  device.validate();
  pulse.validate();
  if (controller) controller->validate();
  if (extractor.n < 2) throw ConfigError("extractor.n: must be >= 2");
  if (!automatic_ok()) {
    throw ConfigError("extractor.l: need 0 < l < n");
  }
  if (extractor.epsilon_exponent < 1) throw ConfigError("extractor.epsilon_exponent: must be >= 1");
  if (extractor.seed && !extractor.automatic && extractor.seed->size() != extractor.n + extractor.l - 1) {
    throw ConfigError("extractor.seed_hex: must encode exactly n + l - 1 bits");
  }
  if (suite.sequences < 1) throw ConfigError("suite.sequences: must be >= 1");
  suite.params().validate();
  if (sweep.steps < 2) throw ConfigError("sweep.steps: must be >= 2");
  if (!(sweep.dt_per_step > 0.0)) throw ConfigError("sweep.dt_per_step: must be > 0");
}

bool PipelineConfig::automatic_ok() const {
  return extractor.automatic || (extractor.l > 0 && extractor.l < extractor.n);
}

PipelineConfig parse_config(const json& doc) {
  PipelineConfig cfg;
  Section root(doc, "");

  if (const json* v = root.raw("seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
      throw ConfigError("seed: expected a non-negative integer");
    }
    cfg.seed = v->get<std::uint64_t>();
  }

  static const json kNull;
  auto section = [&](const char* key) -> const json& {
    const json* v = root.raw(key);
    return v ? *v : kNull;
  };

  {
    Section s(section("device"), "device");
    auto& d = cfg.device;
    s.number("i_peak", d.i_peak);
    s.number("i_valley", d.i_valley);
    s.number("v_peak", d.v_peak);
    s.number("v_valley", d.v_valley);
    s.number("g_high", d.g_high);
    s.number("lambda0", d.lambda0);
    s.number("i_scale", d.i_scale);
    s.number("drift_sigma", d.drift_sigma);
    s.number("drift_tau", d.drift_tau);
    s.finish();
  }
  {
    Section s(section("pulse"), "pulse");
    auto& p = cfg.pulse;
    s.number("amplitude", p.amplitude);
    s.number("width", p.width);
    s.number("duty_cycle", p.duty_cycle);
    s.number("sample_offset", p.sample_offset);
    s.optional_number("substep", p.substep);
    s.finish();
  }
  {
    const json& c = section("controller");
    Section s(c, "controller");
    bool enabled = true;
    s.boolean("enabled", enabled);
    auto ctrl = ControllerState::defaults_for(cfg.device, cfg.pulse.amplitude);
    s.number("setpoint", ctrl.setpoint);
    s.count("window", ctrl.window);
    s.number("gain", ctrl.gain);
    s.number("amplitude", ctrl.amplitude);
    s.number("amp_min", ctrl.amp_min);
    s.number("amp_max", ctrl.amp_max);
    s.finish();
    if (enabled) cfg.controller = ctrl;
  }
  {
    Section s(section("extractor"), "extractor");
    auto& e = cfg.extractor;
    std::optional<std::string> mode;
    s.string("mode", mode);
    if (mode) {
      if (*mode == "auto") e.automatic = true;
      else if (*mode == "fixed") e.automatic = false;
      else throw ConfigError("extractor.mode: expected \"fixed\" or \"auto\"");
    }
    s.count("n", e.n);
    s.count("l", e.l);
    s.count("epsilon_exponent", e.epsilon_exponent);
    std::optional<std::string> seed_hex;
    s.string("seed_hex", seed_hex);
    s.finish();
    if (seed_hex) {
      try {
        e.seed = bits_from_hex(*seed_hex, seed_hex->size() * 4);
      } catch (const DomainError& err) {
        throw ConfigError(std::string("extractor.seed_hex: ") + err.what());
      }
      // Hex carries whole nibbles; keep exactly n + l - 1 bits in fixed mode.
      const std::size_t want = e.n + e.l - 1;
      if (!e.automatic && e.seed->size() >= want && e.seed->size() < want + 4) {
        e.seed = e.seed->slice(0, want);
      }
    }
  }
  {
    const json& sj = section("suite");
    Section s(sj, "suite");
    auto& su = cfg.suite;
    s.count("sequences", su.sequences);
    s.count("sequence_length", su.sequence_length);
    s.number("alpha", su.alpha);
    for (const char* key : kSuiteOverrideKeys) {
      if (const json* v = s.raw(key)) {
        if (!v->is_number_integer() || v->get<long long>() < 0) {
          throw ConfigError(std::string("suite.") + key + ": expected a non-negative integer");
        }
        su.overrides[key] = *v;
      }
    }
    s.finish();
  }
  {
    Section s(section("sweep"), "sweep");
    auto& sw = cfg.sweep;
    s.number("start", sw.start);
    s.optional_number("stop", sw.stop);
    s.count("steps", sw.steps);
    s.number("dt_per_step", sw.dt_per_step);
    s.finish();
  }
  root.finish();
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const PipelineConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  const auto& d = cfg.device;
  j["device"] = {{"i_peak", d.i_peak},   {"i_valley", d.i_valley}, {"v_peak", d.v_peak},
                 {"v_valley", d.v_valley}, {"g_high", d.g_high},   {"lambda0", d.lambda0},
                 {"i_scale", d.i_scale}, {"drift_sigma", d.drift_sigma}, {"drift_tau", d.drift_tau}};
  const auto& p = cfg.pulse;
  j["pulse"] = {{"amplitude", p.amplitude},
                {"width", p.width},
                {"duty_cycle", p.duty_cycle},
                {"sample_offset", p.sample_offset},
                {"substep", p.step()}};
  if (cfg.controller) {
    const auto& c = *cfg.controller;
    j["controller"] = {{"enabled", true},    {"setpoint", c.setpoint}, {"window", c.window},
                       {"gain", c.gain},     {"amplitude", c.amplitude}, {"amp_min", c.amp_min},
                       {"amp_max", c.amp_max}};
  } else {
    j["controller"] = {{"enabled", false}};
  }
  const auto& e = cfg.extractor;
  j["extractor"] = {{"mode", e.automatic ? "auto" : "fixed"},
                    {"n", e.n},
                    {"l", e.l},
                    {"epsilon_exponent", e.epsilon_exponent}};
  if (e.seed) j["extractor"]["seed_hex"] = bits_to_hex(*e.seed);
  j["suite"] = {{"sequences", cfg.suite.sequences},
                {"sequence_length", cfg.suite.sequence_length},
                {"alpha", cfg.suite.alpha}};
  for (const auto& [k, v] : cfg.suite.overrides.items()) j["suite"][k] = v;
  j["sweep"] = {{"start", cfg.sweep.start},
                {"stop", cfg.sweep.stop_for(cfg.device)},
                {"steps", cfg.sweep.steps},
                {"dt_per_step", cfg.sweep.dt_per_step}};
  return j;
}

std::string bits_to_hex(const BitStream& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    unsigned nibble = 0;
    for (std::size_t k = 0; k < 4; ++k) nibble = (nibble << 1) | ((i + k < bits.size() && bits[i + k]) ? 1U : 0U);
    out.push_back(kDigits[nibble]);
  }
  return out;
}

BitStream bits_from_hex(const std::string& hex, std::size_t bits) {
  if (bits > hex.size() * 4) throw DomainError("hex string too short for " + std::to_string(bits) + " bits");
  BitStream out;
  out.reserve(bits);
  for (char ch : hex) {
    unsigned v;
    if (ch >= '0' && ch <= '9') v = static_cast<unsigned>(ch - '0');
    else if (ch >= 'a' && ch <= 'f') v = static_cast<unsigned>(ch - 'a' + 10);
    else if (ch >= 'A' && ch <= 'F') v = static_cast<unsigned>(ch - 'A' + 10);
    else throw DomainError(std::string("invalid hex digit '") + ch + "'");
    for (int b = 3; b >= 0 && out.size() < bits; --b) out.push_back(((v >> b) & 1U) != 0);
  }
  return out;
}

}  // namespace rtd
