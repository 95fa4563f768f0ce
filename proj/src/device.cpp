#include "rtdrng/device.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rtdrng/errors.hpp"

namespace rtd {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("device.") + what);
}

}  // namespace

void DeviceParams::validate() const {
  require(i_valley > 0.0 && i_valley < i_peak, "i_valley: need 0 < i_valley < i_peak");
  require(v_peak > 0.0 && v_peak < v_valley, "v_peak: need 0 < v_peak < v_valley");
  require(g_high > 0.0, "g_high: must be > 0");
  require(lambda0 > 0.0, "lambda0: must be > 0");
  require(i_scale > 0.0, "i_scale: must be > 0");
  require(drift_tau > 0.0, "drift_tau: must be > 0");
  require(drift_sigma >= 0.0, "drift_sigma: must be >= 0");
}

double iv_current(const DeviceParams& p, double v) {
  if (!(v >= 0.0)) throw DomainError("iv_current: voltage must be >= 0");
  if (v <= p.v_peak) return p.i_peak * v / p.v_peak;
  if (v <= p.v_valley) {
    const double t = (v - p.v_peak) / (p.v_valley - p.v_peak);
    return p.i_peak + t * (p.i_valley - p.i_peak);
  }
  return p.i_valley + p.g_high * (v - p.v_valley);
}

double branch_voltage(const DeviceParams& p, Branch branch, double i) {
  if (branch == Branch::L) {
    if (!(i >= 0.0 && i <= p.i_peak)) {
      throw BranchRangeError("current " + std::to_string(i) + " mA outside L branch [0, i_peak]");
    }
    return p.v_peak * i / p.i_peak;
  }
  if (!(i >= p.i_valley)) {
    throw BranchRangeError("current " + std::to_string(i) + " mA below H branch minimum i_valley");
  }
  return p.v_valley + (i - p.i_valley) / p.g_high;
}

double sample_voltage(const DeviceParams& p, Branch branch, double i) {
  if (branch == Branch::L) return branch_voltage(p, branch, std::clamp(i, 0.0, p.i_peak));
  return branch_voltage(p, branch, std::max(i, p.i_valley));
}

double switching_hazard(const DeviceParams& p, const DeviceState& s, double i) {
  const double valley = p.i_valley + s.drift;
  const double peak = p.i_peak + s.drift;
  if (i <= valley) return 0.0;
  if (i > peak) return std::numeric_limits<double>::infinity();
  return p.lambda0 * std::exp((i - peak) / p.i_scale);
}

DeviceState step_device(DeviceState s, const DeviceParams& p, double i, double dt, Rng& rng) {
  if (!(dt > 0.0)) throw DomainError("step_device: dt must be > 0");
  s.clock += dt;
  if (s.branch == Branch::H) {
    if (i < p.i_valley + s.drift) s.branch = Branch::L;
    return s;
  }
  const double rate = switching_hazard(p, s, i);
  if (std::isinf(rate)) {
    s.branch = Branch::H;
  } else if (rate > 0.0 && rng.uniform() < -std::expm1(-rate * dt)) {
    s.branch = Branch::H;
  }
  return s;
}

double time_to_switch(const DeviceParams& p, const DeviceState& s, double i, Rng& rng) {
  const double rate = switching_hazard(p, s, i);
  if (std::isinf(rate)) return 0.0;
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return rng.exponential(rate);
}

DeviceState drift_step(DeviceState s, const DeviceParams& p, double dt, Rng& rng) {
  if (!(dt > 0.0)) throw DomainError("drift_step: dt must be > 0");
  const double tau_ms = p.drift_tau * 1000.0;
  const double decay = std::exp(-dt / tau_ms);
  s.drift *= decay;
  if (p.drift_sigma > 0.0) {
    s.drift += p.drift_sigma * std::sqrt(-std::expm1(-2.0 * dt / tau_ms)) * rng.normal();
  }
  return s;
}

SweepTrace sweep_current(const DeviceParams& p, double start, double stop, std::size_t steps,
                         double dt_per_step, Rng& rng) {
  DeviceState state;
  if (start > p.i_peak + state.drift) state.branch = Branch::H;
  return sweep_current(state, p, start, stop, steps, dt_per_step, rng);
}

SweepTrace sweep_current(DeviceState& state, const DeviceParams& p, double start, double stop,
                         std::size_t steps, double dt_per_step, Rng& rng) {
  if (steps < 2) throw DomainError("sweep_current: steps must be >= 2");
  if (!(dt_per_step > 0.0)) throw DomainError("sweep_current: dt_per_step must be > 0");
  SweepTrace trace;
  trace.points.reserve(steps);
  const double di = (stop - start) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    const double i = (k + 1 == steps) ? stop : start + di * static_cast<double>(k);
    const Branch before = state.branch;
    const double drift = state.drift;
    state = step_device(state, p, i, dt_per_step, rng);
    if (state.branch != before && !trace.switch_index) {
      trace.switch_index = k;
      if (state.branch == Branch::L) {
        trace.switch_current = p.i_valley + drift;
      } else {
        trace.switch_current = (i > p.i_peak + drift) ? p.i_peak + drift : i;
      }
    }
    trace.points.push_back({i, sample_voltage(p, state.branch, i)});
    state = drift_step(state, p, dt_per_step, rng);
  }
  return trace;
}

}  // namespace rtd
