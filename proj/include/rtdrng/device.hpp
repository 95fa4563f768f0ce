#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rtdrng/rng.hpp"

namespace rtd {

enum class Branch : unsigned char { L, H };

/// Phenomenological RTD parameters. Currents in mA, voltages in V, the hazard
/// rate in 1/ms and the drift correlation time in seconds.
struct DeviceParams {
  double i_peak = 1.55;
  double i_valley = 0.40;
  double v_peak = 0.4;
  double v_valley = 0.7;
  // Puts the H branch at 1.15 V for a 1.50 mA bias.
  double g_high = (1.50 - 0.40) / (1.15 - 0.7);
  double lambda0 = 0.98;
  double i_scale = 0.10;
  double drift_sigma = 0.02;
  double drift_tau = 60.0;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

struct DeviceState {
  Branch branch = Branch::L;
  double drift = 0.0;  // mA, shift of the effective peak and valley thresholds
  double clock = 0.0;  // ms since reset
};

struct IvPoint {
  double current;  // mA
  double voltage;  // V
};

struct SweepTrace {
  std::vector<IvPoint> points;
  std::optional<double> switch_current;
  std::optional<std::size_t> switch_index;  // index into points of the first branch change
};

/// Static single-valued I-V curve: rise to the peak, linear NDR fall to the
/// valley, then the second PDR branch with slope g_high.
double iv_current(const DeviceParams& p, double v);

/// Inverts the L or H branch. Throws BranchRangeError outside the branch's
/// current range, which is the condition that forces a switch.
double branch_voltage(const DeviceParams& p, Branch branch, double i);

/// Voltage read out on `branch` with the current clamped into that branch's
/// static range. Used for traces, where drift can hold L slightly above I_p.
double sample_voltage(const DeviceParams& p, Branch branch, double i);

/// L->H hazard rate (1/ms). Zero at or below the shifted valley, exponential in
/// current up to the shifted peak, infinite above it.
double switching_hazard(const DeviceParams& p, const DeviceState& s, double i);

/// Advances the device by `dt` ms at constant current `i`.
DeviceState step_device(DeviceState s, const DeviceParams& p, double i, double dt, Rng& rng);

/// Waiting time (ms) until an L->H switch at constant current: 0 when forced,
/// +inf when the hazard is zero. Consumes one uniform draw only when the hazard
/// is finite and positive.
double time_to_switch(const DeviceParams& p, const DeviceState& s, double i, Rng& rng);

/// Ornstein-Uhlenbeck update of the drift over `dt` ms. Stationary standard
/// deviation is drift_sigma. Does not advance the clock.
DeviceState drift_step(DeviceState s, const DeviceParams& p, double dt, Rng& rng);

/// Linear current ramp from `start` to `stop` over `steps` points, holding each
/// point for `dt_per_step` ms. The device starts from reset, settled on H when
/// `start` already exceeds the peak.
SweepTrace sweep_current(const DeviceParams& p, double start, double stop, std::size_t steps,
                         double dt_per_step, Rng& rng);

/// Same ramp continuing from an existing device state (for hysteresis cycles).
SweepTrace sweep_current(DeviceState& state, const DeviceParams& p, double start, double stop,
                         std::size_t steps, double dt_per_step, Rng& rng);

}  // namespace rtd
