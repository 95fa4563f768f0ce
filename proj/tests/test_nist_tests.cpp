#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtdrng/errors.hpp"
#include "rtdrng/nist/report.hpp"
#include "rtdrng/nist/special.hpp"
#include "rtdrng/nist/tests.hpp"
#include "support.hpp"

using namespace rtd;
using namespace rtd::nist;
using rtd::testing::bernoulli_bits;
using rtd::testing::bits_from_string;
using rtd::testing::splitmix_bits;

namespace {

std::vector<std::uint8_t> eps(const std::string& s) {
  std::vector<std::uint8_t> out;
  for (char c : s) out.push_back(c == '1');
  return out;
}

// 100 bits of pi's binary expansion, as used in the SP 800-22 worked examples.
const std::string kPi100 =
    "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000";

nlohmann::json load(const std::string& name) {
  std::ifstream is(rtd::testing::data_dir() / name);
  return nlohmann::json::parse(is);
}

void check_against_reference(const std::string& file) {
  const auto ref = load(file);
  const auto n = ref["n"].get<std::size_t>();
  const auto bits = splitmix_bits(ref["seed"].get<std::uint64_t>(), n);
  const auto params = TestParams::for_length(n);
  const auto& rp = ref["params"];
  ASSERT_EQ(params.longest_run_m, rp["longest_run_m"].get<std::size_t>());
  ASSERT_EQ(params.nonoverlapping_block, rp["nonoverlapping_block"].get<std::size_t>());
  ASSERT_EQ(params.universal_l, rp["universal_l"].get<unsigned>());
  ASSERT_EQ(params.universal_q, rp["universal_q"].get<std::size_t>());
  ASSERT_EQ(params.universal_k, rp["universal_k"].get<std::size_t>());

  for (const auto& r : run_battery(params, bits)) {
    const auto& want = ref["pvalues"][std::string(test_name(r.test))];
    if (want.is_null()) {
      EXPECT_FALSE(r.applicable) << test_name(r.test);
      EXPECT_TRUE(r.pvalues.empty());
      continue;
    }
    ASSERT_TRUE(r.applicable) << test_name(r.test);
    ASSERT_EQ(r.pvalues.size(), want.size()) << test_name(r.test);
    for (std::size_t i = 0; i < want.size(); ++i) {
      const double w = want[i].get<double>();
      EXPECT_NEAR(r.pvalues[i], w, 1e-9 + 1e-9 * w) << test_name(r.test) << " #" << i;
    }
  }
}

}  // namespace

// Worked examples from the SP 800-22 test descriptions.
TEST(NistExamples, Frequency) {
  EXPECT_NEAR(frequency(eps("1011010101")), 0.527089, 1e-6);
  EXPECT_NEAR(frequency(eps(kPi100)), 0.109599, 1e-6);
  EXPECT_DOUBLE_EQ(frequency(eps("11010011")), nist::erfc(0.5));
  EXPECT_NEAR(frequency(eps("11010011")), 0.4795001221869535, 1e-15);
}

TEST(NistExamples, BlockFrequency) {
  EXPECT_NEAR(block_frequency(eps("0110011010"), 3), 0.801252, 1e-6);
  EXPECT_NEAR(block_frequency(eps(kPi100), 10), 0.706438, 1e-6);
}

TEST(NistExamples, CumulativeSums) {
  EXPECT_NEAR(cumulative_sums(eps("1011010111"), false), 0.4116588, 1e-6);
  EXPECT_NEAR(cumulative_sums(eps(kPi100), false), 0.219194, 1e-6);
  EXPECT_NEAR(cumulative_sums(eps(kPi100), true), 0.114866, 1e-6);
}

TEST(NistExamples, Runs) {
  EXPECT_NEAR(runs(eps("1001101011")), 0.147232, 1e-6);
  EXPECT_NEAR(runs(eps(kPi100)), 0.500798, 1e-6);
}

TEST(NistExamples, ApproximateEntropy) {
  EXPECT_NEAR(approximate_entropy(eps("0100110101"), 3), 0.261961, 1e-6);
  EXPECT_NEAR(approximate_entropy(eps(kPi100), 2), 0.235301, 1e-6);
}

TEST(NistExamples, Serial) {
  const auto p = serial(eps("0011011101"), 3);
  EXPECT_NEAR(p[0], 0.808792, 1e-6);
  EXPECT_NEAR(p[1], 0.670320, 1e-6);
}

TEST(NistReference, FullBatteryAtOneMillionBits) { check_against_reference("sp800_22_splitmix_1e6.json"); }

TEST(NistReference, ScaledBatteryAtHundredThousandBits) { check_against_reference("sp800_22_splitmix_1e5.json"); }

TEST(NistTests, ParamsForLength) {
  const auto d = TestParams::for_length(1'000'000);
  const TestParams def;
  EXPECT_EQ(d.longest_run_m, def.longest_run_m);
  EXPECT_EQ(d.nonoverlapping_block, def.nonoverlapping_block);
  EXPECT_EQ(d.overlapping_blocks, def.overlapping_blocks);
  EXPECT_EQ(d.universal_l, def.universal_l);
  EXPECT_EQ(d.universal_q, def.universal_q);
  EXPECT_EQ(d.universal_k, def.universal_k);
  EXPECT_EQ(d.linear_complexity_n, def.linear_complexity_n);

  const auto s = TestParams::for_length(550'000);
  EXPECT_EQ(s.longest_run_m, 128U);
  EXPECT_EQ(s.longest_run_n, 4296U);
  EXPECT_EQ(s.nonoverlapping_block, 68750U);
  EXPECT_EQ(s.overlapping_blocks, 532U);
  EXPECT_EQ(s.universal_l, 6U);
  EXPECT_EQ(s.universal_q, 640U);
  EXPECT_EQ(s.universal_k, 91026U);
  EXPECT_EQ(s.linear_complexity_n, 1100U);
  EXPECT_NO_THROW(s.validate());
}

TEST(NistTests, ParamsValidation) {
  auto p = TestParams::for_length(1'000'000);
  p.longest_run_m = 64;
  try {
    p.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("suite.longest_run_m"), std::string::npos);
  }
  p = TestParams::for_length(1'000'000);
  p.alpha = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);
  p = TestParams::for_length(1'000'000);
  p.universal_k = 10'000'000;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(NistTests, NamesRoundTrip) {
  EXPECT_EQ(kAllTests.size(), 15U);
  for (auto id : kAllTests) EXPECT_EQ(test_from_name(test_name(id)), id);
  EXPECT_FALSE(test_from_name("Nonsense").has_value());
}

TEST(NistTests, StatisticCounts) {
  const TestParams p;
  EXPECT_EQ(statistic_count(TestId::NonOverlappingTemplate, p), 148U);
  EXPECT_EQ(statistic_count(TestId::RandomExcursions, p), 8U);
  EXPECT_EQ(statistic_count(TestId::RandomExcursionsVariant, p), 18U);
  EXPECT_EQ(statistic_count(TestId::Serial, p), 2U);
  EXPECT_EQ(statistic_count(TestId::CumulativeSums, p), 2U);
  EXPECT_EQ(statistic_count(TestId::Frequency, p), 1U);
}

TEST(NistTests, OverlappingClassProbabilities) {
  // SP 800-22 reference table for m = 9, M = 1032
  const double want[6] = {0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865};
  const auto pi = overlapping_class_probabilities(9, 1032);
  double sum = 0.0;
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(pi[i], want[i], 1e-6);
    sum += pi[i];
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(NistTests, RunTestNeedsEnoughBits) {
  auto p = TestParams::for_length(100'000);
  const auto bits = splitmix_bits(1, 99'999);
  EXPECT_THROW(run_test(TestId::Frequency, p, bits), DomainError);
}

TEST(NistTests, RunTestUsesLeadingBitsOnly) {
  auto p = TestParams::for_length(100'000);
  auto bits = splitmix_bits(5, 100'000);
  const auto a = run_test(TestId::Runs, p, bits);
  bits.append(BitStream(5000, true));
  const auto b = run_test(TestId::Runs, p, bits);
  EXPECT_EQ(a.pvalues, b.pvalues);
}

TEST(NistTests, AllZerosFailsFrequencyAndRuns) {
  const auto p = TestParams::for_length(100'000);
  const BitStream zeros(100'000, false);
  EXPECT_LT(run_test(TestId::Frequency, p, zeros).pvalues.at(0), 1e-300);
  EXPECT_EQ(run_test(TestId::Runs, p, zeros).pvalues.at(0), 0.0);
}

TEST(NistTests, ExcursionsInapplicableWithFewCycles) {
  const auto p = TestParams::for_length(100'000);
  const BitStream ones(100'000, true);
  const auto r = run_test(TestId::RandomExcursions, p, ones);
  EXPECT_FALSE(r.applicable);
  EXPECT_TRUE(r.pvalues.empty());
  EXPECT_FALSE(run_test(TestId::RandomExcursionsVariant, p, ones).applicable);
}

TEST(NistTests, PValuesLieInUnitInterval) {
  for (std::uint64_t seed : {11ULL, 12ULL}) {
    const auto bits = rtd::testing::bernoulli_bits(seed, 200'000, seed == 11 ? 0.5 : 0.51);
    for (const auto& r : run_battery(TestParams::for_length(bits.size()), bits)) {
      for (double pv : r.pvalues) {
        EXPECT_GE(pv, 0.0) << test_name(r.test);
        EXPECT_LE(pv, 1.0) << test_name(r.test);
      }
    }
  }
}

TEST(NistProperties, CalibrationOnGoodGenerator) {
  const auto params = TestParams::for_length(1'000'000);
  std::vector<std::vector<TestResult>> seqs;
  for (std::uint64_t s = 0; s < 30; ++s) seqs.push_back(run_battery(params, splitmix_bits(0xCA11B0 + s, 1'000'000)));
  std::size_t below = 0, total = 0;
  for (const auto& seq : seqs) {
    for (const auto& r : seq) {
      for (double p : r.pvalues) {
        below += p < 0.05;
        ++total;
      }
    }
  }
  EXPECT_NEAR(static_cast<double>(below) / static_cast<double>(total), 0.05, 0.02);
  for (const auto& row : analyze_suite(seqs, 0.05).rows) {
    EXPECT_TRUE(row.proportion_ok()) << test_name(row.test) << " #" << row.statistic;
  }
}

TEST(NistProperties, BiasedInputFailsFrequencyEverywhere) {
  TestParams params = TestParams::for_length(1'000'000);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto r = run_test(TestId::Frequency, params, bernoulli_bits(0xB1A5 + s, 1'000'000, 0.52));
    EXPECT_LT(r.pvalues.at(0), 1e-6) << "sequence " << s;
  }
}
