#include "rtdrng/nist/tests.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rtdrng/errors.hpp"
#include "rtdrng/nist/kernels.hpp"
#include "rtdrng/nist/special.hpp"

namespace rtd::nist {

namespace {

using Bits = std::span<const std::uint8_t>;

constexpr std::array<std::string_view, 15> kNames = {
    "Frequency",          "BlockFrequency",          "CumulativeSums", "Runs",
    "LongestRun",         "Rank",                    "FFT",            "NonOverlappingTemplate",
    "OverlappingTemplate", "Universal",              "ApproximateEntropy", "RandomExcursions",
    "RandomExcursionsVariant", "Serial",             "LinearComplexity",
};

double clamp_p(double p) {
  if (std::isnan(p)) return 0.0;
  return std::clamp(p, 0.0, 1.0);
}

void require_length(bool ok, const char* test) {
  if (!ok) throw DomainError(std::string(test) + ": sequence too short for the configured parameters");
}

double chi_square(std::span<const double> observed, std::span<const double> probs, double total) {
  double chi2 = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = total * probs[i];
    chi2 += (observed[i] - expected) * (observed[i] - expected) / expected;
  }
  return chi2;
}

// Universal test reference mean and variance of the log2 distance, by L.
constexpr std::array<double, 17> kUniversalExpected = {
    0,         0.7326495, 1.5374383, 2.4016068, 3.3112247, 4.2534266, 5.2177052, 6.1962507, 7.1836656,
    8.1764248, 9.1723243, 10.170032, 11.168765, 12.168070, 13.167693, 14.167488, 15.167379};
constexpr std::array<double, 17> kUniversalVariance = {
    0, 0.690, 1.338, 1.901, 2.358, 2.705, 2.954, 3.125, 3.238, 3.311, 3.356, 3.384, 3.401, 3.410, 3.416, 3.419, 3.421};

// Minimum sequence length for each Universal block length L = 6 .. 16.
constexpr std::array<std::size_t, 11> kUniversalMinLength = {
    387840, 904960, 2068480, 4654080, 10342400, 22753280, 49643520, 107560960, 231669760, 496435200, 1059061760};

// Counts of every m-bit pattern over all n cyclic windows.
std::vector<std::size_t> cyclic_pattern_counts(Bits eps, unsigned m) {
  const std::size_t n = eps.size();
  std::vector<std::size_t> counts(std::size_t{1} << m, 0);
  if (m == 0) return counts;
  const std::uint32_t mask = (m >= 32) ? ~0U : ((std::uint32_t{1} << m) - 1);
  std::uint32_t value = 0;
  for (unsigned i = 0; i + 1 < m; ++i) value = (value << 1) | eps[i % n];
  for (std::size_t i = 0; i < n; ++i) {
    value = ((value << 1) | eps[(i + m - 1) % n]) & mask;
    ++counts[value];
  }
  return counts;
}

double psi2(Bits eps, int m) {
  if (m <= 0) return 0.0;
  const auto n = static_cast<double>(eps.size());
  double sum = 0.0;
  for (auto c : cyclic_pattern_counts(eps, static_cast<unsigned>(m))) sum += static_cast<double>(c) * static_cast<double>(c);
  return sum * std::ldexp(1.0, m) / n - n;
}

// Partial sums S_1..S_n of the +/-1 walk.
std::vector<int> random_walk(Bits eps) {
  std::vector<int> s(eps.size());
  int acc = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    acc += eps[i] ? 1 : -1;
    s[i] = acc;
  }
  return s;
}

// Number of cycles J, or nullopt when below max(0.005 sqrt(n), 500).
std::optional<std::size_t> excursion_cycles(const std::vector<int>& s) {
  std::size_t j = 0;
  for (int v : s) j += (v == 0) ? 1 : 0;
  if (!s.empty() && s.back() != 0) ++j;
  const double constraint = std::max(0.005 * std::sqrt(static_cast<double>(s.size())), 500.0);
  if (static_cast<double>(j) < constraint) return std::nullopt;
  return j;
}

}  // namespace

std::string_view test_name(TestId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<TestId> test_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<TestId>(i);
  }
  return std::nullopt;
}

TestParams TestParams::for_length(std::size_t n) {
  TestParams p;
  p.n = n;
  p.longest_run_m = n < 6272 ? 8 : (n < 750000 ? 128 : 10000);
  p.longest_run_n = n / p.longest_run_m;
  p.nonoverlapping_block = n / p.nonoverlapping_blocks;
  p.overlapping_blocks = n / p.overlapping_block;
  unsigned l = 5;
  for (std::size_t i = 0; i < kUniversalMinLength.size() && n >= kUniversalMinLength[i]; ++i) {
    l = static_cast<unsigned>(6 + i);
  }
  p.universal_l = l;
  p.universal_q = std::size_t{10} << l;
  p.universal_k = n / l > p.universal_q ? n / l - p.universal_q : 0;
  p.linear_complexity_n = n / p.linear_complexity_m;
  return p;
}

void TestParams::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("suite." + what); };
  if (n < 100) fail("sequence_length: must be >= 100");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha: need 0 < alpha < 1");
  if (block_frequency_m < 1 || block_frequency_m > n) fail("block_frequency_m: need 1 <= M <= n");
  if (longest_run_m != 8 && longest_run_m != 128 && longest_run_m != 10000) {
    fail("longest_run_m: must be 8, 128 or 10000");
  }
  if (longest_run_n < 1 || longest_run_n * longest_run_m > n) fail("longest_run_n: need 1 <= N and N*M <= n");
  if (nonoverlapping_m < 2 || nonoverlapping_m > 21) fail("nonoverlapping_m: need 2 <= m <= 21");
  if (nonoverlapping_block < nonoverlapping_m || nonoverlapping_blocks < 1 ||
      nonoverlapping_block * nonoverlapping_blocks > n) {
    fail("nonoverlapping_block: need m <= M, N >= 1 and N*M <= n");
  }
  if (overlapping_m < 2 || overlapping_m > 21) fail("overlapping_m: need 2 <= m <= 21");
  if (overlapping_block < overlapping_m || overlapping_blocks < 1 || overlapping_block * overlapping_blocks > n) {
    fail("overlapping_block: need m <= M, N >= 1 and N*M <= n");
  }
  if (universal_l < 1 || universal_l > 16) fail("universal_l: need 1 <= L <= 16");
  if (universal_q < 1 || universal_k < 1 || (universal_q + universal_k) * universal_l > n) {
    fail("universal_k: need Q, K >= 1 and (Q+K)*L <= n");
  }
  if (approx_entropy_m < 1 || approx_entropy_m > 24) fail("approx_entropy_m: need 1 <= m <= 24");
  if (serial_m < 2 || serial_m > 24) fail("serial_m: need 2 <= m <= 24");
  if (linear_complexity_m < 1 || linear_complexity_n < 1 || linear_complexity_m * linear_complexity_n > n) {
    fail("linear_complexity_n: need M, N >= 1 and N*M <= n");
  }
}

std::size_t statistic_count(TestId id, const TestParams& params) {
  switch (id) {
    case TestId::CumulativeSums:
    case TestId::Serial:
      return 2;
    case TestId::RandomExcursions:
      return 8;
    case TestId::RandomExcursionsVariant:
      return 18;
    case TestId::NonOverlappingTemplate:
      return aperiodic_templates(params.nonoverlapping_m).size();
    default:
      return 1;
  }
}

double frequency(Bits eps) {
  require_length(!eps.empty(), "Frequency");
  long long s = 0;
  for (auto b : eps) s += b ? 1 : -1;
  const double s_obs = std::fabs(static_cast<double>(s)) / std::sqrt(static_cast<double>(eps.size()));
  return clamp_p(erfc(s_obs / std::numbers::sqrt2));
}

double block_frequency(Bits eps, std::size_t m) {
  const std::size_t blocks = m == 0 ? 0 : eps.size() / m;
  require_length(blocks >= 1, "BlockFrequency");
  double sum = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < m; ++j) ones += eps[b * m + j];
    const double v = static_cast<double>(ones) / static_cast<double>(m) - 0.5;
    sum += v * v;
  }
  const double chi2 = 4.0 * static_cast<double>(m) * sum;
  return clamp_p(igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0));
}

double cumulative_sums(Bits eps, bool backward) {
  require_length(!eps.empty(), "CumulativeSums");
  const auto n = static_cast<long long>(eps.size());
  long long s = 0, sup = 0, inf = 0;
  for (auto b : eps) {
    s += b ? 1 : -1;
    sup = std::max(sup, s);
    inf = std::min(inf, s);
  }
  const long long z = backward ? std::max(sup - s, s - inf) : std::max(sup, -inf);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double zd = static_cast<double>(z);
  // Integer summation bounds, truncated toward zero as in the reference code.
  double sum1 = 0.0;
  for (long long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
    sum1 += normal_cdf(static_cast<double>(4 * k + 1) * zd / root_n) -
            normal_cdf(static_cast<double>(4 * k - 1) * zd / root_n);
  }
  double sum2 = 0.0;
  for (long long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
    sum2 += normal_cdf(static_cast<double>(4 * k + 3) * zd / root_n) -
            normal_cdf(static_cast<double>(4 * k + 1) * zd / root_n);
  }
  return clamp_p(1.0 - sum1 + sum2);
}

double runs(Bits eps) {
  require_length(eps.size() >= 2, "Runs");
  const auto n = static_cast<double>(eps.size());
  std::size_t ones = 0;
  for (auto b : eps) ones += b;
  const double pi = static_cast<double>(ones) / n;
  if (std::fabs(pi - 0.5) > 2.0 / std::sqrt(n)) return 0.0;
  std::size_t v = 1;
  for (std::size_t k = 0; k + 1 < eps.size(); ++k) v += (eps[k] != eps[k + 1]) ? 1 : 0;
  const double num = std::fabs(static_cast<double>(v) - 2.0 * n * pi * (1.0 - pi));
  const double den = 2.0 * pi * (1.0 - pi) * std::sqrt(2.0 * n);
  return clamp_p(erfc(num / den));
}

double longest_run(Bits eps, std::size_t m) {
  std::vector<unsigned> v;
  std::vector<double> pi;
  if (m == 8) {
    v = {1, 2, 3, 4};
    pi = {0.2148, 0.3672, 0.2305, 0.1875};
  } else if (m == 128) {
    v = {4, 5, 6, 7, 8, 9};
    pi = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
  } else if (m == 10000) {
    v = {10, 11, 12, 13, 14, 15, 16};
    pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
  } else {
    throw ConfigError("suite.longest_run_m: must be 8, 128 or 10000");
  }
  const std::size_t blocks = eps.size() / m;
  require_length(blocks >= 1, "LongestRun");
  std::vector<double> nu(v.size(), 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    unsigned run = 0, longest = 0;
    for (std::size_t j = 0; j < m; ++j) {
      run = eps[b * m + j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    const std::size_t cls = longest <= v.front() ? 0 : (longest >= v.back() ? v.size() - 1 : longest - v.front());
    nu[cls] += 1.0;
  }
  const double chi2 = chi_square(nu, pi, static_cast<double>(blocks));
  return clamp_p(igamc(static_cast<double>(v.size() - 1) / 2.0, chi2 / 2.0));
}

double rank(Bits eps) {
  const std::size_t matrices = eps.size() / 1024;
  require_length(matrices >= 38, "Rank");
  auto full_rank_prob = [](int r) {
    double product = 1.0;
    for (int i = 0; i < r; ++i) {
      const double f = 1.0 - std::ldexp(1.0, i - 32);
      product *= f * f / (1.0 - std::ldexp(1.0, i - r));
    }
    return std::ldexp(product, r * (64 - r) - 1024);
  };
  const double p32 = full_rank_prob(32);
  const double p31 = full_rank_prob(31);
  const double p30 = 1.0 - p32 - p31;
  double f32 = 0.0, f31 = 0.0;
  for (std::size_t k = 0; k < matrices; ++k) {
    BitMatrix32 rows{};
    for (std::size_t r = 0; r < 32; ++r) {
      std::uint32_t row = 0;
      for (std::size_t c = 0; c < 32; ++c) row = (row << 1) | eps[k * 1024 + r * 32 + c];
      rows[r] = row;
    }
    const int rk = gf2_rank(rows);
    if (rk == 32) f32 += 1.0;
    else if (rk == 31) f31 += 1.0;
  }
  const double n = static_cast<double>(matrices);
  const double f30 = n - f32 - f31;
  const double chi2 = (f32 - n * p32) * (f32 - n * p32) / (n * p32) + (f31 - n * p31) * (f31 - n * p31) / (n * p31) +
                      (f30 - n * p30) * (f30 - n * p30) / (n * p30);
  return clamp_p(std::exp(-chi2 / 2.0));
}

double spectral(Bits eps) {
  require_length(eps.size() >= 2, "FFT");
  const auto n = static_cast<double>(eps.size());
  const auto moduli = spectral_moduli(eps);
  const double threshold = std::sqrt(std::log(1.0 / 0.05) * n);
  const double expected = 0.95 * n / 2.0;
  double below = 0.0;
  for (double m : moduli) below += (m < threshold) ? 1.0 : 0.0;
  const double d = (below - expected) / std::sqrt(n * 0.95 * 0.05 / 4.0);
  return clamp_p(erfc(std::fabs(d) / std::numbers::sqrt2));
}

std::vector<double> non_overlapping_template(Bits eps, unsigned m, std::size_t block, std::size_t blocks) {
  require_length(block >= m && blocks >= 1 && block * blocks <= eps.size(), "NonOverlappingTemplate");
  const auto templates = aperiodic_templates(m);
  const std::size_t patterns = std::size_t{1} << m;
  const std::uint32_t mask = static_cast<std::uint32_t>(patterns - 1);
  // An aperiodic template cannot overlap itself, so its non-overlapping
  // matches are exactly its window occurrences: one histogram per block
  // serves every template.
  std::vector<std::uint32_t> hist(blocks * patterns, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::uint8_t* base = eps.data() + b * block;
    std::uint32_t value = 0;
    for (unsigned i = 0; i + 1 < m; ++i) value = (value << 1) | base[i];
    std::uint32_t* h = hist.data() + b * patterns;
    for (std::size_t i = m - 1; i < block; ++i) {
      value = ((value << 1) | base[i]) & mask;
      ++h[value];
    }
  }
  const double mu = static_cast<double>(block - m + 1) / static_cast<double>(patterns);
  const double var = static_cast<double>(block) *
                     (1.0 / static_cast<double>(patterns) - (2.0 * m - 1.0) / std::ldexp(1.0, 2 * static_cast<int>(m)));
  std::vector<double> pvalues;
  pvalues.reserve(templates.size());
  for (auto t : templates) {
    double chi2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const double w = hist[b * patterns + t];
      chi2 += (w - mu) * (w - mu) / var;
    }
    pvalues.push_back(clamp_p(igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0)));
  }
  return pvalues;
}

std::array<double, 6> overlapping_class_probabilities(unsigned m, std::size_t block) {
  constexpr std::size_t kClasses = 6;
  // state: trailing ones capped at m, matches capped at 5
  std::vector<double> prob((m + 1) * kClasses, 0.0), next(prob.size());
  prob[0] = 1.0;
  for (std::size_t step = 0; step < block; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (unsigned r = 0; r <= m; ++r) {
      for (std::size_t c = 0; c < kClasses; ++c) {
        const double p = prob[r * kClasses + c];
        if (p == 0.0) continue;
        next[c] += 0.5 * p;
        const unsigned r1 = std::min(r + 1, m);
        const std::size_t c1 = std::min(kClasses - 1, c + (r1 == m ? 1 : 0));
        next[r1 * kClasses + c1] += 0.5 * p;
      }
    }
    prob.swap(next);
  }
  std::array<double, kClasses> out{};
  for (unsigned r = 0; r <= m; ++r) {
    for (std::size_t c = 0; c < kClasses; ++c) out[c] += prob[r * kClasses + c];
  }
  return out;
}

double overlapping_template(Bits eps, unsigned m, std::size_t block, std::size_t blocks) {
  require_length(block >= m && blocks >= 1 && block * blocks <= eps.size(), "OverlappingTemplate");
  const auto pi = overlapping_class_probabilities(m, block);
  std::array<double, 6> nu{};
  for (std::size_t b = 0; b < blocks; ++b) {
    unsigned run = 0;
    std::size_t matches = 0;
    for (std::size_t j = 0; j < block; ++j) {
      run = eps[b * block + j] ? run + 1 : 0;
      if (run >= m) ++matches;
    }
    nu[std::min<std::size_t>(matches, 5)] += 1.0;
  }
  const double chi2 = chi_square(nu, pi, static_cast<double>(blocks));
  return clamp_p(igamc(5.0 / 2.0, chi2 / 2.0));
}

double universal(Bits eps, unsigned l, std::size_t q, std::size_t k) {
  require_length(l >= 1 && l <= 16 && (q + k) * l <= eps.size() && k >= 1, "Universal");
  std::vector<std::size_t> last(std::size_t{1} << l, 0);
  auto block_value = [&](std::size_t i) {
    std::size_t v = 0;
    for (unsigned j = 0; j < l; ++j) v = (v << 1) | eps[i * l + j];
    return v;
  };
  for (std::size_t i = 1; i <= q; ++i) last[block_value(i - 1)] = i;
  double sum = 0.0;
  for (std::size_t i = q + 1; i <= q + k; ++i) {
    const std::size_t v = block_value(i - 1);
    sum += std::log2(static_cast<double>(i - last[v]));
    last[v] = i;
  }
  const double kd = static_cast<double>(k);
  const double fn = sum / kd;
  const double ld = static_cast<double>(l);
  const double c = 0.7 - 0.8 / ld + (4.0 + 32.0 / ld) * std::pow(kd, -3.0 / ld) / 15.0;
  const double sigma = c * std::sqrt(kUniversalVariance[l] / kd);
  return clamp_p(erfc(std::fabs(fn - kUniversalExpected[l]) / (std::numbers::sqrt2 * sigma)));
}

double approximate_entropy(Bits eps, unsigned m) {
  require_length(eps.size() >= m + 1, "ApproximateEntropy");
  const auto n = static_cast<double>(eps.size());
  auto phi = [&](unsigned len) {
    if (len == 0) return 0.0;
    double sum = 0.0;
    for (auto c : cyclic_pattern_counts(eps, len)) {
      if (c > 0) sum += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
    }
    return sum / n;
  };
  const double apen = phi(m) - phi(m + 1);
  const double chi2 = 2.0 * n * (std::numbers::ln2 - apen);
  return clamp_p(igamc(std::ldexp(1.0, static_cast<int>(m) - 1), chi2 / 2.0));
}

std::optional<std::array<double, 8>> random_excursions(Bits eps) {
  require_length(!eps.empty(), "RandomExcursions");
  const auto s = random_walk(eps);
  const auto cycles = excursion_cycles(s);
  if (!cycles) return std::nullopt;
  constexpr std::array<int, 8> states = {-4, -3, -2, -1, 1, 2, 3, 4};
  // nu[state index][visits in a cycle, capped at 5]
  std::array<std::array<double, 6>, 8> nu{};
  std::array<int, 9> visits{};  // indexed by x + 4
  auto close_cycle = [&] {
    for (std::size_t i = 0; i < states.size(); ++i) {
      const int c = visits[static_cast<std::size_t>(states[i] + 4)];
      nu[i][static_cast<std::size_t>(std::min(c, 5))] += 1.0;
    }
    visits.fill(0);
  };
  for (int v : s) {
    if (v == 0) {
      close_cycle();
    } else if (v >= -4 && v <= 4) {
      ++visits[static_cast<std::size_t>(v + 4)];
    }
  }
  if (s.back() != 0) close_cycle();

  const auto j = static_cast<double>(*cycles);
  std::array<double, 8> out{};
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double ax = std::abs(states[i]);
    const double stay = 1.0 - 1.0 / (2.0 * ax);
    std::array<double, 6> pi{};
    pi[0] = stay;
    for (int k = 1; k <= 4; ++k) pi[static_cast<std::size_t>(k)] = std::pow(stay, k - 1) / (4.0 * ax * ax);
    pi[5] = std::pow(stay, 4) / (2.0 * ax);
    const double chi2 = chi_square(nu[i], pi, j);
    out[i] = clamp_p(igamc(2.5, chi2 / 2.0));
  }
  return out;
}

std::optional<std::array<double, 18>> random_excursions_variant(Bits eps) {
  require_length(!eps.empty(), "RandomExcursionsVariant");
  const auto s = random_walk(eps);
  const auto cycles = excursion_cycles(s);
  if (!cycles) return std::nullopt;
  std::array<double, 19> visits{};  // indexed by x + 9
  for (int v : s) {
    if (v >= -9 && v <= 9) visits[static_cast<std::size_t>(v + 9)] += 1.0;
  }
  const auto j = static_cast<double>(*cycles);
  std::array<double, 18> out{};
  std::size_t idx = 0;
  for (int x = -9; x <= 9; ++x) {
    if (x == 0) continue;
    const double xi = visits[static_cast<std::size_t>(x + 9)];
    out[idx++] = clamp_p(erfc(std::fabs(xi - j) / std::sqrt(2.0 * j * (4.0 * std::abs(x) - 2.0))));
  }
  return out;
}

std::array<double, 2> serial(Bits eps, unsigned m) {
  require_length(m >= 2 && eps.size() >= m, "Serial");
  const int mi = static_cast<int>(m);
  const double p0 = psi2(eps, mi);
  const double p1 = psi2(eps, mi - 1);
  const double p2 = psi2(eps, mi - 2);
  const double del1 = p0 - p1;
  const double del2 = p0 - 2.0 * p1 + p2;
  return {clamp_p(igamc(std::ldexp(1.0, mi - 2), del1 / 2.0)), clamp_p(igamc(std::ldexp(1.0, mi - 3), del2 / 2.0))};
}

double linear_complexity(Bits eps, std::size_t m, std::size_t blocks) {
  require_length(m >= 1 && blocks >= 1 && m * blocks <= eps.size(), "LinearComplexity");
  constexpr std::array<double, 7> pi = {0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};
  const double md = static_cast<double>(m);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double mean = md / 2.0 + (9.0 - sign) / 36.0 - (md / 3.0 + 2.0 / 9.0) / std::pow(2.0, md);
  std::array<double, 7> nu{};
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto l = static_cast<double>(berlekamp_massey(eps.subspan(b * m, m)));
    const double t = sign * (l - mean) + 2.0 / 9.0;
    std::size_t cls;
    if (t <= -2.5) cls = 0;
    else if (t <= -1.5) cls = 1;
    else if (t <= -0.5) cls = 2;
    else if (t <= 0.5) cls = 3;
    else if (t <= 1.5) cls = 4;
    else if (t <= 2.5) cls = 5;
    else cls = 6;
    nu[cls] += 1.0;
  }
  const double chi2 = chi_square(nu, pi, static_cast<double>(blocks));
  return clamp_p(igamc(3.0, chi2 / 2.0));
}

TestResult run_test(TestId id, const TestParams& params, const BitStream& bits) {
  const auto eps = bits.to_bits();
  return run_test(id, params, std::span<const std::uint8_t>(eps));
}

TestResult run_test(TestId id, const TestParams& p, std::span<const std::uint8_t> all) {
  if (all.size() < p.n) {
    throw DomainError(std::string(test_name(id)) + ": sequence of " + std::to_string(all.size()) +
                      " bits is shorter than n = " + std::to_string(p.n));
  }
  const Bits eps = all.first(p.n);
  TestResult r{id, {}, true};
  switch (id) {
    case TestId::Frequency:
      r.pvalues = {frequency(eps)};
      break;
    case TestId::BlockFrequency:
      r.pvalues = {block_frequency(eps, p.block_frequency_m)};
      break;
    case TestId::CumulativeSums:
      r.pvalues = {cumulative_sums(eps, false), cumulative_sums(eps, true)};
      break;
    case TestId::Runs:
      r.pvalues = {runs(eps)};
      break;
    case TestId::LongestRun:
      r.pvalues = {longest_run(eps.first(p.longest_run_m * p.longest_run_n), p.longest_run_m)};
      break;
    case TestId::Rank:
      r.pvalues = {rank(eps)};
      break;
    case TestId::FFT:
      r.pvalues = {spectral(eps)};
      break;
    case TestId::NonOverlappingTemplate:
      r.pvalues = non_overlapping_template(eps, p.nonoverlapping_m, p.nonoverlapping_block, p.nonoverlapping_blocks);
      break;
    case TestId::OverlappingTemplate:
      r.pvalues = {overlapping_template(eps, p.overlapping_m, p.overlapping_block, p.overlapping_blocks)};
      break;
    case TestId::Universal:
      r.pvalues = {universal(eps, p.universal_l, p.universal_q, p.universal_k)};
      break;
    case TestId::ApproximateEntropy:
      r.pvalues = {approximate_entropy(eps, p.approx_entropy_m)};
      break;
    case TestId::RandomExcursions:
      if (auto v = random_excursions(eps)) {
        r.pvalues.assign(v->begin(), v->end());
      } else {
        r.applicable = false;
      }
      break;
    case TestId::RandomExcursionsVariant:
      if (auto v = random_excursions_variant(eps)) {
        r.pvalues.assign(v->begin(), v->end());
      } else {
        r.applicable = false;
      }
      break;
    case TestId::Serial: {
      const auto v = serial(eps, p.serial_m);
      r.pvalues.assign(v.begin(), v.end());
      break;
    }
    case TestId::LinearComplexity:
      r.pvalues = {linear_complexity(eps, p.linear_complexity_m, p.linear_complexity_n)};
      break;
  }
  return r;
}

std::vector<TestResult> run_battery(const TestParams& params, const BitStream& bits) {
  params.validate();
  const auto eps = bits.to_bits();
  std::vector<TestResult> out;
  out.reserve(kAllTests.size());
  for (auto id : kAllTests) out.push_back(run_test(id, params, std::span<const std::uint8_t>(eps)));
  return out;
}

}  // namespace rtd::nist
