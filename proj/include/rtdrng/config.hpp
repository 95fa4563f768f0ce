#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include <json.hpp>

#include "rtdrng/bitstream.hpp"
#include "rtdrng/controller.hpp"
#include "rtdrng/device.hpp"
#include "rtdrng/nist/tests.hpp"
#include "rtdrng/pulse.hpp"

namespace rtd {

struct SweepSettings {
  double start = 0.0;
  std::optional<double> stop;  // defaults to 1.2 * i_peak
  std::size_t steps = 200;
  double dt_per_step = 0.2;  // ms

  double stop_for(const DeviceParams& p) const { return stop.value_or(1.2 * p.i_peak); }
};

struct ExtractorSettings {
  bool automatic = false;  // estimate h_min and choose l
  std::size_t n = 1000;
  std::size_t l = 330;
  unsigned epsilon_exponent = 32;
  std::optional<BitStream> seed;  // derived from the input when absent
};

struct SuiteSettings {
  std::size_t sequences = 30;
  std::size_t sequence_length = 1'000'000;
  double alpha = 0.05;
  nlohmann::json overrides = nlohmann::json::object();  // per-test TestParams fields

  /// TestParams::for_length(sequence_length) with alpha and overrides applied.
  nist::TestParams params() const;
};

struct PipelineConfig {
  std::uint64_t seed = 1;
  DeviceParams device;
  PulseConfig pulse;
  std::optional<ControllerState> controller;
  ExtractorSettings extractor;
  SuiteSettings suite;
  SweepSettings sweep;

  /// Built-in defaults: controller enabled with ControllerState::defaults_for.
  static PipelineConfig defaults();

  /// Throws ConfigError naming the offending field.
  void validate() const;
  bool automatic_ok() const;
};

/// Parses a config document. Every section is optional; unknown keys and
/// mistyped values are rejected with their dotted path.
PipelineConfig parse_config(const nlohmann::json& doc);
PipelineConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const PipelineConfig& cfg);

/// Hex (MSB-first) form of a bit sequence and back; `bits` fixes the length.
std::string bits_to_hex(const BitStream& bits);
BitStream bits_from_hex(const std::string& hex, std::size_t bits);

}  // namespace rtd
