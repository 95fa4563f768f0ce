#include <gtest/gtest.h>

#include <cmath>

#include "rtdrng/errors.hpp"
#include "rtdrng/pulse.hpp"
#include "support.hpp"

using namespace rtd;

namespace {

DeviceParams no_drift() {
  DeviceParams p;
  p.drift_sigma = 0.0;
  return p;
}

double ones_fraction(const BitStream& b) { return static_cast<double>(b.count_ones()) / static_cast<double>(b.size()); }

double closed_form(const DeviceParams& p, const PulseConfig& cfg) {
  return -std::expm1(-switching_hazard(p, DeviceState{}, cfg.amplitude) * cfg.width * cfg.sample_offset);
}

}  // namespace

TEST(PulseConfig, Validation) {
  EXPECT_NO_THROW(PulseConfig{}.validate());
  PulseConfig c;
  c.duty_cycle = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = PulseConfig{};
  c.sample_offset = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = PulseConfig{};
  c.substep = 2.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = PulseConfig{};
  c.amplitude = -1;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_DOUBLE_EQ(PulseConfig{}.period(), 2.0);
  EXPECT_DOUBLE_EQ(PulseConfig{}.step(), 0.01);
}

TEST(RunPulse, BelowValleyAlwaysZeroAboveAlwaysOne) {
  DeviceParams p;  // drift on, but far from the thresholds
  PulseConfig low, high;
  low.amplitude = p.i_valley * 0.5;
  high.amplitude = p.i_peak * 1.5;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng(seed);
    EXPECT_FALSE(run_pulse(DeviceState{}, p, low, rng).bit);
    EXPECT_TRUE(run_pulse(DeviceState{}, p, high, rng).bit);
  }
}

TEST(RunPulse, EveryPulseStartsFromReset) {
  const DeviceParams p = no_drift();
  PulseConfig cfg;
  cfg.amplitude = p.i_peak * 1.5;
  Rng rng(1);
  DeviceState s;
  s.branch = Branch::H;
  for (int k = 0; k < 100; ++k) {
    // the off phase alone must return the device to L
    DeviceState after_off = step_device(s, p, 0.0, cfg.off_time(), rng);
    EXPECT_EQ(after_off.branch, Branch::L);
    s = run_pulse(s, p, cfg, rng).state;
    EXPECT_EQ(s.branch, Branch::H);
  }
}

TEST(RunPulse, AdvancesClockByPeriod) {
  const DeviceParams p;
  Rng rng(2);
  const auto out = run_pulse(DeviceState{}, p, PulseConfig{}, rng);
  EXPECT_DOUBLE_EQ(out.state.clock, PulseConfig{}.period());
}

TEST(RunPulse, BiasMatchesClosedForm) {
  const DeviceParams p = no_drift();
  struct Setting {
    double amplitude, width, offset;
  };
  for (auto s : {Setting{1.50, 1.0, 1.0}, Setting{1.53, 1.0, 1.0}, Setting{1.45, 3.0, 1.0}, Setting{1.55, 1.0, 0.4}}) {
    PulseConfig cfg;
    cfg.amplitude = s.amplitude;
    cfg.width = s.width;
    cfg.sample_offset = s.offset;
    Rng rng(100);
    DeviceState st;
    const auto bits = acquire_bits(st, p, cfg, 100000, rng);
    EXPECT_NEAR(ones_fraction(bits), closed_form(p, cfg), 0.01) << s.amplitude << " " << s.width;
  }
}

TEST(RunPulse, CalibrationStraddlesHalf) {
  const DeviceParams p = no_drift();
  PulseConfig lo, hi;
  lo.amplitude = 1.50;
  hi.amplitude = 1.53;
  EXPECT_LT(closed_form(p, lo), 0.5);
  EXPECT_GT(closed_form(p, hi), 0.5);
  EXPECT_NEAR(closed_form(p, PulseConfig{}), 0.5, 0.01);
}

TEST(AcquireBits, CountAndDeterminism) {
  const DeviceParams p;
  Rng rng(1);
  DeviceState s;
  EXPECT_THROW(acquire_bits(s, p, PulseConfig{}, 0, rng), DomainError);
  EXPECT_EQ(acquire_bits(s, p, PulseConfig{}, 1, rng).size(), 1U);
  Rng a(42), b(42);
  DeviceState sa, sb;
  EXPECT_EQ(acquire_bits(sa, p, PulseConfig{}, 5000, a), acquire_bits(sb, p, PulseConfig{}, 5000, b));
  EXPECT_EQ(sa.drift, sb.drift);
}

TEST(AcquireBits, MillionBits) {
  const DeviceParams p;
  Rng rng(1);
  DeviceState s;
  EXPECT_EQ(acquire_bits(s, p, PulseConfig{}, 1'000'000, rng).size(), 1'000'000U);
}

TEST(AcquireBits, MonotoneInAmplitude) {
  const DeviceParams p = no_drift();
  double prev = -1.0;
  const int n = 100000;
  for (double amp : {1.0, 1.2, 1.4, 1.47, 1.5, 1.53}) {
    PulseConfig cfg;
    cfg.amplitude = amp;
    Rng rng(7);
    DeviceState s;
    const double f = ones_fraction(acquire_bits(s, p, cfg, n, rng));
    EXPECT_GE(f, prev - 3 * std::sqrt(0.25 / n));
    prev = f;
  }
}

TEST(AcquireBits, MonotoneInWidth) {
  const DeviceParams p = no_drift();
  double prev = -1.0;
  const int n = 100000;
  for (double width : {0.1, 0.3, 1.0, 2.0, 5.0}) {
    PulseConfig cfg;
    cfg.amplitude = 1.45;
    cfg.width = width;
    Rng rng(8);
    DeviceState s;
    const double f = ones_fraction(acquire_bits(s, p, cfg, n, rng));
    EXPECT_GE(f, prev - 3 * std::sqrt(0.25 / n));
    prev = f;
  }
}

TEST(TracePulses, MatchesAcquiredBits) {
  const DeviceParams p;
  PulseConfig cfg;
  Rng a(5), b(5);
  DeviceState sa, sb;
  const auto trace = trace_pulses(sa, p, cfg, 50, a);
  const auto bits = acquire_bits(sb, p, cfg, 50, b);
  // 100 off-phase samples then 100 on-phase samples per pulse
  ASSERT_EQ(trace.samples.size(), 50U * 200U);
  for (std::size_t k = 0; k < 50; ++k) {
    const double v_end = trace.samples[k * 200 + 199].voltage;
    EXPECT_EQ(v_end >= p.v_valley, bits[k]) << "pulse " << k;
  }
  EXPECT_DOUBLE_EQ(sa.clock, sb.clock);
}

TEST(TracePulses, VoltageLevelsAndTime) {
  const DeviceParams p;
  Rng rng(6);
  DeviceState s;
  const auto trace = trace_pulses(s, p, PulseConfig{}, 100, rng);
  const double low = branch_voltage(p, Branch::L, PulseConfig{}.amplitude);
  const double high = branch_voltage(p, Branch::H, PulseConfig{}.amplitude);
  bool intra_pulse_step = false;
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    const double v = trace.samples[k].voltage;
    EXPECT_TRUE((v >= 0.0 && v <= p.v_peak) || v >= p.v_valley) << v;
    if (k > 0) {
      EXPECT_GT(trace.samples[k].time, trace.samples[k - 1].time);
      const double prev = trace.samples[k - 1].voltage;
      if (std::fabs(prev - low) < 1e-12 && std::fabs(v - high) < 1e-12) intra_pulse_step = true;
    }
  }
  EXPECT_TRUE(intra_pulse_step);
}

TEST(TracePulses, BelowValleyStaysLow) {
  const DeviceParams p;
  PulseConfig cfg;
  cfg.amplitude = 0.3;
  Rng rng(9);
  DeviceState s;
  for (const auto& smp : trace_pulses(s, p, cfg, 20, rng).samples) EXPECT_LE(smp.voltage, p.v_peak);
}

TEST(HFraction, TrivialStreams) {
  const auto ones = h_fraction_histogram(BitStream(5000, true), 500);
  EXPECT_EQ(ones.windows(), 10U);
  EXPECT_EQ(ones.counts[500], 10U);
  EXPECT_DOUBLE_EQ(ones.mean(), 1.0);

  BitStream alt;
  for (int i = 0; i < 5000; ++i) alt.push_back(i % 2 == 1);
  const auto h = h_fraction_histogram(alt, 500);
  EXPECT_EQ(h.counts[250], 10U);
  EXPECT_DOUBLE_EQ(h.mean(), 0.5);
  EXPECT_DOUBLE_EQ(h.stddev(), 0.0);
}

TEST(HFraction, BernoulliMean) {
  const auto bits = rtd::testing::bernoulli_bits(17, 500 * 2000, 0.5);
  const auto h = h_fraction_histogram(bits, 500);
  EXPECT_NEAR(h.mean(), 0.5, 3 * (0.5 / std::sqrt(500.0)) / std::sqrt(2000.0));
}

TEST(HFraction, Errors) {
  EXPECT_THROW(h_fraction_histogram(BitStream{}, 500), DomainError);
  EXPECT_THROW(h_fraction_histogram(BitStream(100, true), 0), DomainError);
  EXPECT_THROW(h_fraction_histogram(BitStream(100, true), 500), DomainError);
}
