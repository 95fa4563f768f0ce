#include "rtdrng/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rtdrng/errors.hpp"

namespace rtd {

void PulseConfig::validate() const {
  auto fail = [](const char* what) { throw ConfigError(std::string("pulse.") + what); };
  if (!(amplitude > 0.0)) fail("amplitude: must be > 0");
  if (!(width > 0.0)) fail("width: must be > 0");
  if (!(duty_cycle > 0.0 && duty_cycle < 1.0)) fail("duty_cycle: need 0 < duty_cycle < 1");
  if (!(sample_offset > 0.0 && sample_offset <= 1.0)) fail("sample_offset: need 0 < sample_offset <= 1");
  if (substep && !(*substep > 0.0 && *substep <= width)) fail("substep: need 0 < substep <= width");
}

namespace {

// Off phase: at zero current the H branch cannot hold, so this is the reset.
DeviceState off_phase(DeviceState s, const DeviceParams& p, const PulseConfig& cfg, Rng& rng) {
  return step_device(s, p, 0.0, cfg.off_time(), rng);
}

}  // namespace

PulseOutcome run_pulse(DeviceState s, const DeviceParams& p, const PulseConfig& cfg, Rng& rng) {
  s = off_phase(s, p, cfg, rng);
  // The hazard is constant through the on phase, so a single exponential
  // waiting time decides the branch at every instant of the pulse.
  const double t_switch = time_to_switch(p, s, cfg.amplitude, rng);
  const bool bit = t_switch < cfg.width * cfg.sample_offset;
  s.branch = t_switch < cfg.width ? Branch::H : Branch::L;
  s.clock += cfg.width;
  s = drift_step(s, p, cfg.period(), rng);
  return {s, bit};
}

BitStream acquire_bits(DeviceState& state, const DeviceParams& p, const PulseConfig& cfg,
                       std::size_t count, Rng& rng) {
  if (count == 0) throw DomainError("acquire_bits: count must be >= 1");
  BitStream bits;
  bits.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto [next, bit] = run_pulse(state, p, cfg, rng);
    state = next;
    bits.push_back(bit);
  }
  return bits;
}

PulseTrace trace_pulses(DeviceState& state, const DeviceParams& p, const PulseConfig& cfg,
                        std::size_t n_pulses, Rng& rng) {
  if (n_pulses == 0) throw DomainError("trace_pulses: n_pulses must be >= 1");
  const double dt = cfg.step();
  PulseTrace trace;

  // Emits samples every `dt` over [t0, t0 + span), the last one clipped to the end.
  auto emit = [&](double t0, double span, auto&& voltage_at) {
    const auto n = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
    for (std::size_t k = 1; k <= n; ++k) {
      const double offset = std::min(span, dt * static_cast<double>(k));
      trace.samples.push_back({t0 + offset, voltage_at(offset)});
    }
  };

  for (std::size_t n = 0; n < n_pulses; ++n) {
    const double t_off = state.clock;
    state = off_phase(state, p, cfg, rng);
    emit(t_off, cfg.off_time(), [&](double) { return sample_voltage(p, Branch::L, 0.0); });

    const double t_on = state.clock;
    const double t_switch = time_to_switch(p, state, cfg.amplitude, rng);
    emit(t_on, cfg.width, [&](double offset) {
      // Substep resolution: a switch inside a substep shows at its end.
      const Branch b = (t_switch <= offset) ? Branch::H : Branch::L;
      return sample_voltage(p, b, cfg.amplitude);
    });
    state.branch = t_switch < cfg.width ? Branch::H : Branch::L;
    state.clock += cfg.width;
    state = drift_step(state, p, cfg.period(), rng);
  }
  return trace;
}

std::size_t HFractionHistogram::windows() const {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

double HFractionHistogram::mean() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) sum += fraction(k) * static_cast<double>(counts[k]);
  return sum / static_cast<double>(windows());
}

double HFractionHistogram::stddev() const {
  const double m = mean();
  double ss = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double d = fraction(k) - m;
    ss += d * d * static_cast<double>(counts[k]);
  }
  const auto w = windows();
  return w > 1 ? std::sqrt(ss / static_cast<double>(w - 1)) : 0.0;
}

HFractionHistogram h_fraction_histogram(const BitStream& bits, std::size_t window) {
  if (bits.empty()) throw DomainError("h_fraction_histogram: empty stream");
  if (window == 0) throw DomainError("h_fraction_histogram: window must be >= 1");
  if (bits.size() < window) throw DomainError("h_fraction_histogram: stream shorter than one window");
  HFractionHistogram h;
  h.window = window;
  h.counts.assign(window + 1, 0);
  const std::size_t n_windows = bits.size() / window;
  for (std::size_t w = 0; w < n_windows; ++w) {
    std::size_t ones = 0;
    for (std::size_t i = w * window; i < (w + 1) * window; ++i) ones += bits[i] ? 1 : 0;
    ++h.counts[ones];
  }
  return h;
}

}  // namespace rtd
