#pragma once

#include <cstddef>
#include <vector>

#include "rtdrng/bitstream.hpp"
#include "rtdrng/device.hpp"
#include "rtdrng/pulse.hpp"
#include "rtdrng/rng.hpp"

namespace rtd {

/// Feedback loop holding the windowed H fraction at `setpoint` by trimming the
/// pulse amplitude (mA).
struct ControllerState {
  double setpoint = 0.5;
  std::size_t window = 500;
  double gain = 0.0;  // mA per unit ratio error
  double amplitude = 0.0;
  double amp_min = 0.0;
  double amp_max = 0.0;

  /// Gain 0.25 * (I_p - I_v), bounds [I_v, I_p + (I_p - I_v) / 2].
  static ControllerState defaults_for(const DeviceParams& p, double amplitude);

  void validate() const;
};

/// amplitude += gain * (setpoint - observed), clamped to [amp_min, amp_max].
ControllerState controller_update(ControllerState ctrl, double observed_ratio);

struct ClosedLoopRun {
  BitStream bits;
  std::vector<double> ratios;      // observed H fraction per window
  std::vector<double> amplitudes;  // amplitude applied during each window
};

/// Alternates one window of acquisition with one controller update.
ClosedLoopRun run_closed_loop(DeviceState& state, const DeviceParams& p, PulseConfig cfg,
                              ControllerState& ctrl, std::size_t n_windows, Rng& rng);

/// Closed-loop acquisition of exactly `count` bits; a trailing partial window
/// is acquired but does not update the controller.
ClosedLoopRun run_closed_loop_bits(DeviceState& state, const DeviceParams& p, PulseConfig cfg,
                                   ControllerState& ctrl, std::size_t count, Rng& rng);

}  // namespace rtd
