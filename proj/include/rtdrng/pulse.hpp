#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rtdrng/bitstream.hpp"
#include "rtdrng/device.hpp"
#include "rtdrng/rng.hpp"

namespace rtd {

/// Current pulse train. Amplitude in mA, times in ms.
struct PulseConfig {
  double amplitude = 1.515;
  double width = 1.0;
  double duty_cycle = 0.5;
  double sample_offset = 1.0;        // fraction of the width at which the voltage is read
  std::optional<double> substep;     // defaults to width / 100

  double period() const { return width / duty_cycle; }
  double off_time() const { return period() - width; }
  double step() const { return substep.value_or(width / 100.0); }

  void validate() const;
};

struct PulseOutcome {
  DeviceState state;
  bool bit;
};

struct TraceSample {
  double time;     // ms
  double voltage;  // V
};

struct PulseTrace {
  std::vector<TraceSample> samples;
};

/// One pulse period: zero-current off phase (resets to L), the on phase at
/// `cfg.amplitude`, the branch read at width * sample_offset (H -> 1), then one
/// drift update for the whole period.
PulseOutcome run_pulse(DeviceState s, const DeviceParams& p, const PulseConfig& cfg, Rng& rng);

/// `count` successive pulses; `state` is threaded through. Throws DomainError
/// for count == 0.
BitStream acquire_bits(DeviceState& state, const DeviceParams& p, const PulseConfig& cfg,
                       std::size_t count, Rng& rng);

/// Voltage sampled at the end of every substep over `n_pulses` periods. Given
/// the same seed, the pulse outcomes match acquire_bits.
PulseTrace trace_pulses(DeviceState& state, const DeviceParams& p, const PulseConfig& cfg,
                        std::size_t n_pulses, Rng& rng);

struct HFractionHistogram {
  std::size_t window = 0;
  std::vector<std::size_t> counts;  // counts[k]: windows with exactly k ones

  std::size_t windows() const;
  double fraction(std::size_t k) const { return static_cast<double>(k) / static_cast<double>(window); }
  double mean() const;
  double stddev() const;  // sample standard deviation of the window fractions
};

/// Ones-fraction over floor(len / window) disjoint windows; trailing bits are
/// ignored.
HFractionHistogram h_fraction_histogram(const BitStream& bits, std::size_t window);

}  // namespace rtd
