#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "rtdrng/nist/tests.hpp"

namespace rtd::nist {

/// Uniformity P-values below this mark a row as failing.
inline constexpr double kUniformityThreshold = 0.0001;

/// Minimum passing count: floor(s (p - 3 sqrt(p (1 - p) / s))), p = 1 - alpha.
std::size_t pass_threshold(std::size_t sample_size, double alpha);

/// Decade bin of a P-value: 0 for [0, 0.1], k for (k/10, (k+1)/10].
std::size_t decade_bin(double pvalue);

/// igamc(9/2, chi2/2) over the decade counts, with floor(total/10) expected
/// per bin. Throws DomainError for fewer than 10 P-values.
double uniformity_pvalue(const std::array<std::size_t, 10>& counts);

/// One statistic row: a test's i-th P-value across all applicable sequences.
struct ReportRow {
  TestId test;
  std::size_t statistic = 0;
  std::array<std::size_t, 10> counts{};
  double uniformity_p = 0.0;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::size_t threshold = 0;

  bool evaluated() const { return total > 0; }
  /// Uniformity needs at least one expected P-value per decade.
  bool uniformity_computed() const { return total >= 10; }
  bool proportion_ok() const { return passed >= threshold; }
  bool uniformity_ok() const { return !uniformity_computed() || uniformity_p >= kUniformityThreshold; }
  bool pass() const { return !evaluated() || (proportion_ok() && uniformity_ok()); }
};

struct SuiteReport {
  double alpha = 0.05;
  std::size_t sequences = 0;
  std::vector<ReportRow> rows;

  bool passed() const;
  /// Rows that failed, in report order.
  std::vector<const ReportRow*> failures() const;
};

/// Aggregates per-sequence battery results (outer index: sequence) in
/// (test, statistic, sequence) order.
SuiteReport analyze_suite(const std::vector<std::vector<TestResult>>& per_sequence, double alpha);

/// Tab-separated table: C1..C10, P-VALUE, PROPORTION, STATISTICAL TEST.
void write_tsv(std::ostream& os, const SuiteReport& report);

nlohmann::json to_json(const SuiteReport& report);

}  // namespace rtd::nist
