#include "rtdrng/controller.hpp"

#include <algorithm>
#include <string>

#include "rtdrng/errors.hpp"

namespace rtd {

ControllerState ControllerState::defaults_for(const DeviceParams& p, double amplitude) {
  ControllerState c;
  const double span = p.i_peak - p.i_valley;
  c.gain = 0.25 * span;
  c.amplitude = amplitude;
  c.amp_min = p.i_valley;
  c.amp_max = p.i_peak + 0.5 * span;
  return c;
}

void ControllerState::validate() const {
  auto fail = [](const char* what) { throw ConfigError(std::string("controller.") + what); };
  if (!(setpoint > 0.0 && setpoint < 1.0)) fail("setpoint: need 0 < setpoint < 1");
  if (window < 1) fail("window: must be >= 1");
  if (!(gain > 0.0)) fail("gain: must be > 0");
  if (!(amp_min < amp_max)) fail("amp_min: need amp_min < amp_max");
}

ControllerState controller_update(ControllerState ctrl, double observed_ratio) {
  if (!(observed_ratio >= 0.0 && observed_ratio <= 1.0)) {
    throw DomainError("controller_update: observed ratio must lie in [0, 1]");
  }
  ctrl.amplitude = std::clamp(ctrl.amplitude + ctrl.gain * (ctrl.setpoint - observed_ratio),
                              ctrl.amp_min, ctrl.amp_max);
  return ctrl;
}

ClosedLoopRun run_closed_loop(DeviceState& state, const DeviceParams& p, PulseConfig cfg,
                              ControllerState& ctrl, std::size_t n_windows, Rng& rng) {
  if (n_windows == 0) throw DomainError("run_closed_loop: n_windows must be >= 1");
  return run_closed_loop_bits(state, p, cfg, ctrl, n_windows * ctrl.window, rng);
}

ClosedLoopRun run_closed_loop_bits(DeviceState& state, const DeviceParams& p, PulseConfig cfg,
                                   ControllerState& ctrl, std::size_t count, Rng& rng) {
  if (count == 0) throw DomainError("run_closed_loop: count must be >= 1");
  ClosedLoopRun run;
  run.bits.reserve(count);
  while (run.bits.size() < count) {
    const std::size_t n = std::min(ctrl.window, count - run.bits.size());
    cfg.amplitude = ctrl.amplitude;
    const BitStream window = acquire_bits(state, p, cfg, n, rng);
    run.bits.append(window);
    if (n < ctrl.window) break;
    const double ratio = static_cast<double>(window.count_ones()) / static_cast<double>(n);
    run.ratios.push_back(ratio);
    run.amplitudes.push_back(ctrl.amplitude);
    ctrl = controller_update(ctrl, ratio);
  }
  return run;
}

}  // namespace rtd
