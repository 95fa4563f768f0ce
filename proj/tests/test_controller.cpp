#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rtdrng/controller.hpp"
#include "rtdrng/errors.hpp"

using namespace rtd;

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

// Least-squares slope of a series against its index.
double slope(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  const double xm = (n - 1) / 2;
  const double ym = mean(y);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sxy += (static_cast<double>(i) - xm) * (y[i] - ym);
    sxx += (static_cast<double>(i) - xm) * (static_cast<double>(i) - xm);
  }
  return sxy / sxx;
}

}  // namespace

TEST(Controller, DefaultsAndValidation) {
  const DeviceParams p;
  const auto c = ControllerState::defaults_for(p, 1.515);
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(c.gain, 0.25 * (p.i_peak - p.i_valley));
  EXPECT_EQ(c.window, 500U);
  auto bad = c;
  bad.gain = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = c;
  bad.setpoint = 1.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = c;
  bad.amp_min = bad.amp_max;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Controller, UpdateDirection) {
  const auto c = ControllerState::defaults_for(DeviceParams{}, 1.5);
  EXPECT_DOUBLE_EQ(controller_update(c, 0.5).amplitude, 1.5);
  EXPECT_LT(controller_update(c, 0.6).amplitude, 1.5);
  EXPECT_GT(controller_update(c, 0.4).amplitude, 1.5);
  auto at_min = c;
  at_min.amplitude = at_min.amp_min;
  EXPECT_DOUBLE_EQ(controller_update(at_min, 1.0).amplitude, at_min.amp_min);
  EXPECT_THROW(controller_update(c, 1.1), DomainError);
  EXPECT_THROW(controller_update(c, -0.1), DomainError);
}

TEST(Controller, AmplitudeStaysClamped) {
  auto c = ControllerState::defaults_for(DeviceParams{}, 1.5);
  c.gain = 10.0;
  for (int k = 0; k < 100; ++k) {
    c = controller_update(c, k % 2 ? 0.0 : 1.0);
    EXPECT_GE(c.amplitude, c.amp_min);
    EXPECT_LE(c.amplitude, c.amp_max);
  }
}

TEST(Controller, StepDisturbanceSettlesIntoBand) {
  DeviceParams p;
  p.drift_sigma = 0.0;
  p.drift_tau = 1e9;  // offset effectively frozen over the run
  DeviceState s;
  s.drift = 0.03;
  auto ctrl = ControllerState::defaults_for(p, 1.515);
  Rng rng(21);
  const auto run = run_closed_loop(s, p, PulseConfig{}, ctrl, 50, rng);
  const double band = 2.0 / std::sqrt(static_cast<double>(ctrl.window));
  ASSERT_EQ(run.ratios.size(), 50U);
  // the last windows sit inside the band
  for (std::size_t w = 30; w < 50; ++w) EXPECT_LT(std::fabs(run.ratios[w] - 0.5), band) << w;
  EXPECT_NEAR(s.drift, 0.03, 1e-6);
  EXPECT_GT(run.amplitudes.back(), 1.515);
}

TEST(Controller, ZeroGainKeepsAmplitude) {
  const DeviceParams p;
  auto ctrl = ControllerState::defaults_for(p, 1.515);
  ctrl.gain = 0.0;  // bypasses validate on purpose
  DeviceState s;
  Rng rng(1);
  const auto run = run_closed_loop(s, p, PulseConfig{}, ctrl, 20, rng);
  for (double a : run.amplitudes) EXPECT_DOUBLE_EQ(a, 1.515);
}

TEST(Controller, CalibratedNoDriftMean) {
  DeviceParams p;
  p.drift_sigma = 0.0;
  // amplitude where 1 - exp(-lambda * 1 ms) = 1/2
  const double amp = p.i_peak + p.i_scale * std::log(std::log(2.0) / p.lambda0);
  auto ctrl = ControllerState::defaults_for(p, amp);
  DeviceState s;
  Rng rng(4);
  const std::size_t windows = 200;
  const auto run = run_closed_loop(s, p, PulseConfig{}, ctrl, windows, rng);
  EXPECT_NEAR(mean(run.ratios), 0.5, 3.0 / (2.0 * std::sqrt(500.0 * windows)));
}

TEST(Controller, ControlBeatsOpenLoopUnderDrift) {
  DeviceParams p;
  p.drift_sigma = 0.1;
  p.drift_tau = 0.5;
  int better = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto ctrl = ControllerState::defaults_for(p, 1.515);
    DeviceState a, b;
    Rng ra(seed), rb(seed);
    const auto closed = run_closed_loop(a, p, PulseConfig{}, ctrl, 100, ra);
    auto frozen = ControllerState::defaults_for(p, 1.515);
    frozen.gain = 0.0;
    const auto open = run_closed_loop(b, p, PulseConfig{}, frozen, 100, rb);
    better += std::fabs(mean(closed.ratios) - 0.5) < std::fabs(mean(open.ratios) - 0.5);
  }
  EXPECT_GE(better, 4);
}

TEST(Controller, NoTrendBeyondNoDriftBaseline) {
  // 99th percentile of |slope| over no-drift open-loop runs
  DeviceParams still;
  still.drift_sigma = 0.0;
  std::vector<double> base;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto ctrl = ControllerState::defaults_for(still, 1.515);
    ctrl.gain = 0.0;
    DeviceState s;
    Rng rng(1000 + seed);
    base.push_back(std::fabs(slope(run_closed_loop(s, still, PulseConfig{}, ctrl, 100, rng).ratios)));
  }
  std::sort(base.begin(), base.end());
  const double p99 = base[197];

  DeviceParams drifting;
  drifting.drift_sigma = 0.1;
  drifting.drift_tau = 0.5;
  auto ctrl = ControllerState::defaults_for(drifting, 1.515);
  DeviceState s;
  Rng rng(5);
  const auto closed = run_closed_loop(s, drifting, PulseConfig{}, ctrl, 100, rng);
  EXPECT_LE(std::fabs(slope(closed.ratios)), p99);
}

TEST(Controller, PartialWindowDoesNotUpdate) {
  const DeviceParams p;
  auto ctrl = ControllerState::defaults_for(p, 1.515);
  DeviceState s;
  Rng rng(3);
  const auto run = run_closed_loop_bits(s, p, PulseConfig{}, ctrl, 1250, rng);
  EXPECT_EQ(run.bits.size(), 1250U);
  EXPECT_EQ(run.ratios.size(), 2U);
  EXPECT_EQ(run.amplitudes.size(), 2U);
  EXPECT_THROW(run_closed_loop(s, p, PulseConfig{}, ctrl, 0, rng), DomainError);
}
