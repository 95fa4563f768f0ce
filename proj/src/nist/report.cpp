#include "rtdrng/nist/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "rtdrng/errors.hpp"
#include "rtdrng/nist/special.hpp"

namespace rtd::nist {

std::size_t pass_threshold(std::size_t sample_size, double alpha) {
  if (sample_size == 0) throw DomainError("pass_threshold: sample size must be >= 1");
  const double s = static_cast<double>(sample_size);
  const double p = 1.0 - alpha;
  const double v = s * (p - 3.0 * std::sqrt(p * (1.0 - p) / s));
  return v <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(v));
}

std::size_t decade_bin(double pvalue) {
  if (pvalue <= 0.1) return 0;
  const auto k = static_cast<std::size_t>(std::ceil(pvalue * 10.0 - 1e-12)) - 1;
  return std::min<std::size_t>(k, 9);
}

double uniformity_pvalue(const std::array<std::size_t, 10>& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total < 10) throw DomainError("uniformity_pvalue: need at least 10 P-values");
  const double expected = static_cast<double>(total) / 10.0;
  double chi2 = 0.0;
  for (auto c : counts) chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return igamc(9.0 / 2.0, chi2 / 2.0);
}

bool SuiteReport::passed() const {
  for (const auto& r : rows) {
    if (!r.pass()) return false;
  }
  return true;
}

std::vector<const ReportRow*> SuiteReport::failures() const {
  std::vector<const ReportRow*> out;
  for (const auto& r : rows) {
    if (!r.pass()) out.push_back(&r);
  }
  return out;
}

SuiteReport analyze_suite(const std::vector<std::vector<TestResult>>& per_sequence, double alpha) {
  if (per_sequence.empty()) throw DomainError("analyze_suite: need at least one sequence");
  SuiteReport report;
  report.alpha = alpha;
  report.sequences = per_sequence.size();

  // (test, statistic) -> P-values across applicable sequences, in sequence order.
  std::map<std::pair<int, std::size_t>, std::vector<double>> columns;
  std::map<int, std::size_t> width;
  for (const auto& results : per_sequence) {
    for (const auto& r : results) {
      const int key = static_cast<int>(r.test);
      // Excursion rows appear even when no sequence was applicable.
      const std::size_t fixed = r.test == TestId::RandomExcursions ? 8 : r.test == TestId::RandomExcursionsVariant ? 18 : 0;
      width[key] = std::max({width[key], r.pvalues.size(), fixed});
      if (!r.applicable) continue;
      for (std::size_t i = 0; i < r.pvalues.size(); ++i) columns[{key, i}].push_back(r.pvalues[i]);
    }
  }
  for (const auto& [key, n_stats] : width) {
    for (std::size_t i = 0; i < n_stats; ++i) {
      ReportRow row;
      row.test = static_cast<TestId>(key);
      row.statistic = i;
      const auto it = columns.find({key, i});
      if (it != columns.end()) {
        for (double p : it->second) {
          ++row.counts[decade_bin(p)];
          if (p >= alpha) ++row.passed;
        }
        row.total = it->second.size();
      }
      if (row.total > 0) row.threshold = pass_threshold(row.total, alpha);
      if (row.uniformity_computed()) row.uniformity_p = uniformity_pvalue(row.counts);
      report.rows.push_back(row);
    }
  }
  return report;
}

void write_tsv(std::ostream& os, const SuiteReport& report) {
  os << "C1\tC2\tC3\tC4\tC5\tC6\tC7\tC8\tC9\tC10\tP-VALUE\tPROPORTION\tSTATISTICAL TEST\n";
  char buf[32];
  for (const auto& r : report.rows) {
    for (auto c : r.counts) os << c << '\t';
    if (r.uniformity_computed()) {
      std::snprintf(buf, sizeof buf, "%.6f", r.uniformity_p);
      os << buf;
    } else {
      os << "----";
    }
    if (r.evaluated()) {
      os << '\t' << r.passed << '/' << r.total;
    } else {
      os << "\t----";
    }
    os << '\t' << test_name(r.test) << '\n';
  }
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json j;
    j["test"] = std::string(test_name(r.test));
    j["statistic"] = r.statistic;
    j["counts"] = r.counts;
    j["evaluated"] = r.evaluated();
    j["uniformity_p"] = r.uniformity_computed() ? nlohmann::json(r.uniformity_p) : nlohmann::json(nullptr);
    j["passed"] = r.passed;
    j["total"] = r.total;
    j["threshold"] = r.threshold;
    j["proportion_ok"] = r.proportion_ok();
    j["uniformity_ok"] = r.uniformity_ok();
    j["pass"] = r.pass();
    rows.push_back(std::move(j));
  }
  return {{"alpha", report.alpha}, {"sequences", report.sequences}, {"pass", report.passed()}, {"rows", rows}};
}

}  // namespace rtd::nist
