#include "rtdrng/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "rtdrng/errors.hpp"
#include "rtdrng/extractor.hpp"
#include "rtdrng/io.hpp"
#include "rtdrng/pulse.hpp"

namespace rtd {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

Metadata stage_meta(const char* stage, const PipelineConfig& cfg) {
  Metadata m;
  m.set("stage", stage);
  m.set("seed", std::to_string(cfg.seed));
  m.set("config", to_json(cfg).dump());
  return m;
}

void write_with_meta(const fs::path& path, const std::string& text, const Metadata& meta) {
  write_text(path, text);
  write_metadata(path, meta);
}

std::string histogram_tsv(const HFractionHistogram& h) {
  std::ostringstream os;
  os << "ones\tfraction\twindows\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    os << k << '\t' << fixed(h.fraction(k)) << '\t' << h.counts[k] << '\n';
  }
  return os.str();
}

std::uint64_t parse_u64(const Metadata& m, const std::string& key, const fs::path& file) {
  auto v = m.get(key);
  if (!v) throw IoError(sidecar_path(file).string() + ": missing key " + key);
  try {
    return std::stoull(*v);
  } catch (const std::exception&) {
    throw IoError(sidecar_path(file).string() + ": bad value for " + key);
  }
}

}  // namespace

SweepDirection sweep_direction_from_name(const std::string& name) {
  if (name == "forward") return SweepDirection::Forward;
  if (name == "reverse") return SweepDirection::Reverse;
  throw ConfigError("direction: expected forward or reverse, got '" + name + "'");
}

const char* sweep_direction_name(SweepDirection d) {
  return d == SweepDirection::Forward ? "forward" : "reverse";
}

fs::path cmd_generate(const PipelineConfig& cfg, const fs::path& out, std::size_t count,
                      const std::string& name) {
  cfg.validate();
  if (count == 0) throw ConfigError("count: must be >= 1");
  ensure_dir(out);

  Rng rng(cfg.seed);
  DeviceState state;
  BitStream bits;
  std::optional<ClosedLoopRun> loop;
  if (cfg.controller) {
    ControllerState ctrl = *cfg.controller;
    loop = run_closed_loop_bits(state, cfg.device, cfg.pulse, ctrl, count, rng);
    bits = loop->bits;
  } else {
    bits = acquire_bits(state, cfg.device, cfg.pulse, count, rng);
  }

  Metadata meta = stage_meta("generate", cfg);
  meta.set("name", name);
  meta.set("count", std::to_string(count));
  meta.set("controller", cfg.controller ? "on" : "off");
  meta.set("amplitude", format_double(cfg.pulse.amplitude));
  meta.set("sim_start_ms", format_double(0.0));
  meta.set("sim_end_ms", format_double(state.clock));
  meta.set("ones", std::to_string(bits.count_ones()));
  meta.set("digest", hex64(fingerprint(bits)));

  const fs::path bits_path = out / (name + ".bits");
  write_bitstream(bits_path, bits);
  write_metadata(bits_path, meta);

  const std::size_t window = cfg.controller ? cfg.controller->window : 500;
  if (bits.size() >= window) {
    Metadata hm = meta;
    hm.set("window", std::to_string(window));
    write_with_meta(out / (name + ".hist.tsv"), histogram_tsv(h_fraction_histogram(bits, window)), hm);
  }
  if (loop) {
    std::ostringstream os;
    os << "window\tamplitude_mA\tratio\n";
    for (std::size_t w = 0; w < loop->ratios.size(); ++w) {
      os << w << '\t' << format_double(loop->amplitudes[w]) << '\t' << format_double(loop->ratios[w]) << '\n';
    }
    write_with_meta(out / (name + ".control.tsv"), os.str(), meta);
  }
  return bits_path;
}

fs::path cmd_sweep(const PipelineConfig& cfg, const fs::path& out, SweepDirection direction,
                   std::size_t repeats) {
  cfg.validate();
  if (repeats == 0) throw ConfigError("repeats: must be >= 1");
  ensure_dir(out);

  const auto& sw = cfg.sweep;
  const double lo = sw.start;
  const double hi = sw.stop_for(cfg.device);
  const bool forward = direction == SweepDirection::Forward;
  const double from = forward ? lo : hi;
  const double to = forward ? hi : lo;

  Rng rng(cfg.seed);
  DeviceState state;
  std::ostringstream traces;
  traces << "sweep\tindex\tcurrent_mA\tvoltage_V\n";
  std::ostringstream switches;
  switches << "sweep\tswitch_current_mA\n";
  std::vector<std::size_t> hist(sw.steps - 1, 0);
  const double bin = (hi - lo) / static_cast<double>(sw.steps - 1);
  std::size_t recorded = 0;

  for (std::size_t r = 0; r < repeats; ++r) {
    state.branch = forward ? Branch::L : Branch::H;
    SweepTrace t = sweep_current(state, cfg.device, from, to, sw.steps, sw.dt_per_step, rng);
    for (std::size_t k = 0; k < t.points.size(); ++k) {
      traces << r << '\t' << k << '\t' << format_double(t.points[k].current) << '\t'
             << format_double(t.points[k].voltage) << '\n';
    }
    if (t.switch_current) {
      ++recorded;
      switches << r << '\t' << format_double(*t.switch_current) << '\n';
      const double pos = (*t.switch_current - lo) / bin;
      const auto idx = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(hist.size() - 1)));
      ++hist[idx];
    } else {
      switches << r << "\tnone\n";
    }
  }

  Metadata meta = stage_meta("sweep", cfg);
  meta.set("direction", sweep_direction_name(direction));
  meta.set("repeats", std::to_string(repeats));
  meta.set("switches", std::to_string(recorded));
  meta.set("sim_end_ms", format_double(state.clock));

  const std::string stem = std::string("sweep_") + sweep_direction_name(direction);
  write_with_meta(out / (stem + ".tsv"), traces.str(), meta);
  write_with_meta(out / (stem + "_switches.tsv"), switches.str(), meta);

  std::ostringstream hs;
  hs << "bin_low_mA\tbin_high_mA\tcount\n";
  for (std::size_t b = 0; b < hist.size(); ++b) {
    hs << format_double(lo + bin * static_cast<double>(b)) << '\t'
       << format_double(lo + bin * static_cast<double>(b + 1)) << '\t' << hist[b] << '\n';
  }
  const fs::path hist_path = out / (stem + "_hist.tsv");
  write_with_meta(hist_path, hs.str(), meta);
  return hist_path;
}

fs::path cmd_extract(const PipelineConfig& cfg, const fs::path& input, const fs::path& output) {
  cfg.validate();
  const BitStream raw = read_bitstream(input);
  const auto& es = cfg.extractor;
  if (raw.size() < es.n) {
    throw DomainError("input has " + std::to_string(raw.size()) + " bits, need at least n = " +
                      std::to_string(es.n));
  }

  ExtractorConfig ec;
  ec.n = es.n;
  ec.epsilon_exponent = es.epsilon_exponent;
  std::optional<double> h_min;
  if (es.automatic) {
    h_min = min_entropy_estimate(raw);
    ec.l = choose_block_params(*h_min, es.n, es.epsilon_exponent);
  } else {
    ec.l = es.l;
  }
  const bool seed_given = es.seed && es.seed->size() == ec.n + ec.l - 1;
  if (es.seed && !seed_given) {
    throw ConfigError("extractor.seed_hex: must encode exactly n + l - 1 = " + std::to_string(ec.n + ec.l - 1) +
                      " bits");
  }
  ec.seed = seed_given ? *es.seed : derive_seed(raw, ec.n, ec.l);

  const BitStream out = extract(raw, ec);

  Metadata meta = stage_meta("extract", cfg);
  meta.set("input", input.string());
  meta.set("input_bits", std::to_string(raw.size()));
  meta.set("input_digest", hex64(fingerprint(raw)));
  meta.set("mode", es.automatic ? "auto" : "fixed");
  if (h_min) meta.set("h_min", format_double(*h_min));
  meta.set("n", std::to_string(ec.n));
  meta.set("l", std::to_string(ec.l));
  meta.set("k", std::to_string(ec.epsilon_exponent));
  meta.set("seed_source", seed_given ? "config" : "derived");
  meta.set("seed_fingerprint", hex64(fingerprint(ec.seed)));
  meta.set("seed_hex", bits_to_hex(ec.seed));
  meta.set("output_bits", std::to_string(out.size()));
  meta.set("digest", hex64(fingerprint(out)));

  if (output.has_parent_path()) ensure_dir(output.parent_path());
  write_bitstream(output, out);
  write_metadata(output, meta);
  return output;
}

nist::SuiteReport cmd_test(const PipelineConfig& cfg, const fs::path& input, const fs::path& out) {
  cfg.validate();
  const BitStream bits = read_bitstream(input);
  const std::size_t seqs = cfg.suite.sequences;
  const std::size_t len = cfg.suite.sequence_length;
  if (bits.size() / len < seqs) {
    throw DomainError("insufficient data: " + std::to_string(bits.size()) + " bits for " + std::to_string(seqs) +
                      " sequences of " + std::to_string(len));
  }
  const nist::TestParams params = cfg.suite.params();

  std::vector<std::vector<nist::TestResult>> results;
  results.reserve(seqs);
  for (std::size_t s = 0; s < seqs; ++s) {
    results.push_back(nist::run_battery(params, bits.slice(s * len, len)));
  }
  nist::SuiteReport report = nist::analyze_suite(results, params.alpha);

  ensure_dir(out);
  Metadata meta = stage_meta("test", cfg);
  meta.set("input", input.string());
  meta.set("input_bits", std::to_string(bits.size()));
  meta.set("input_digest", hex64(fingerprint(bits)));
  meta.set("sequences", std::to_string(seqs));
  meta.set("sequence_length", std::to_string(len));
  meta.set("alpha", format_double(params.alpha));
  meta.set("verdict", report.passed() ? "pass" : "fail");
  meta.set("failed_rows", std::to_string(report.failures().size()));

  std::ostringstream tsv;
  nist::write_tsv(tsv, report);
  write_with_meta(out / "report.tsv", tsv.str(), meta);
  write_with_meta(out / "report.json", nist::to_json(report).dump(2) + "\n", meta);
  return report;
}

fs::path cmd_report(const fs::path& dir) {
  std::vector<std::string> missing;
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());

  // Generated streams are recognised by their sidecar's stage key.
  std::vector<fs::path> generated;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path& p = entry.path();
    if (p.extension() != ".bits" || !fs::exists(sidecar_path(p))) continue;
    if (read_metadata(p).get("stage") == "generate") generated.push_back(p);
  }
  std::sort(generated.begin(), generated.end());

  const fs::path extracted = dir / "extracted.bits";
  const fs::path report_json = dir / "report.json";
  if (generated.empty()) missing.push_back("generated bitstream (<name>.bits with stage=generate)");
  if (!fs::exists(extracted)) missing.push_back("extracted.bits");
  else if (!fs::exists(sidecar_path(extracted))) missing.push_back("extracted.bits.meta");
  if (!fs::exists(report_json)) missing.push_back("report.json");
  if (!missing.empty()) {
    std::string msg = "missing artifacts in " + dir.string() + ":";
    for (const auto& m : missing) msg += "\n  " + m;
    throw IoError(msg);
  }

  std::ostringstream os;
  os << "RTD TRNG run summary: " << dir.string() << "\n\n";

  // Device settings come from the first generated stream's config.
  {
    const Metadata m = read_metadata(generated.front());
    const auto cfg = nlohmann::json::parse(m.get("config").value_or("{}"));
    os << "[device]\n";
    if (cfg.contains("device")) {
      for (const auto& [k, v] : cfg["device"].items()) os << "  " << k << " = " << v.dump() << '\n';
    }
    os << "  seed = " << m.get("seed").value_or("?") << "\n\n";
  }

  os << "[generate]\n";
  for (const auto& p : generated) {
    const Metadata m = read_metadata(p);
    const BitStream bits = read_bitstream(p);
    const std::size_t window = 500;
    os << "  " << p.filename().string() << ": " << bits.size() << " bits, amplitude "
       << m.get("amplitude").value_or("?") << " mA, controller " << m.get("controller").value_or("?") << '\n';
    const double frac = static_cast<double>(bits.count_ones()) / static_cast<double>(bits.size());
    os << "    H fraction " << fixed(frac);
    if (bits.size() >= window) {
      const auto h = h_fraction_histogram(bits, window);
      const double se = h.stddev() / std::sqrt(static_cast<double>(h.windows()));
      os << ", window-" << window << " mean " << fixed(h.mean()) << " +/- " << fixed(se) << " ("
         << (h.mean() < 0.5 ? "below" : h.mean() > 0.5 ? "above" : "at") << " 0.5)\n";
      // Coarse text histogram of window fractions in 0.02-wide bins.
      std::map<int, std::size_t> coarse;
      for (std::size_t k = 0; k < h.counts.size(); ++k) {
        if (h.counts[k]) coarse[static_cast<int>(std::floor(h.fraction(k) * 50.0))] += h.counts[k];
      }
      for (const auto& [b, c] : coarse) {
        os << "      " << fixed(b / 50.0, 2) << (b == 25 ? " |" : "  ") << std::string(
               static_cast<std::size_t>(std::ceil(60.0 * static_cast<double>(c) / static_cast<double>(h.windows()))), '#')
           << ' ' << c << '\n';
      }
    } else {
      os << '\n';
    }
  }
  os << '\n';

  {
    const Metadata m = read_metadata(extracted);
    const auto in_bits = parse_u64(m, "input_bits", extracted);
    const auto out_bits = parse_u64(m, "output_bits", extracted);
    os << "[extract]\n  n = " << m.get("n").value_or("?") << ", l = " << m.get("l").value_or("?")
       << ", k = " << m.get("k").value_or("?") << ", seed " << m.get("seed_source").value_or("?") << " ("
       << m.get("seed_fingerprint").value_or("?") << ")\n";
    os << "  " << in_bits << " -> " << out_bits << " bits, ratio "
       << fixed(in_bits ? static_cast<double>(out_bits) / static_cast<double>(in_bits) : 0.0, 4) << "\n\n";
  }

  {
    const auto j = nlohmann::json::parse(read_text(report_json));
    os << "[test]\n";
    os << "  sequences = " << j.value("sequences", 0) << ", alpha = " << j.value("alpha", 0.0) << '\n';
    std::size_t failed = 0;
    if (j.contains("rows")) {
      for (const auto& row : j["rows"]) {
        if (!row.value("pass", true)) {
          ++failed;
          os << "  FAIL " << row.value("test", std::string("?")) << " #" << row.value("statistic", 0)
             << ": " << row.value("passed", 0) << "/" << row.value("total", 0) << ", uniformity P "
             << row["uniformity_p"].dump() << '\n';
        }
      }
    }
    os << "  verdict: " << (j.value("pass", false) ? "PASS" : "FAIL") << " (" << failed << " failing rows)\n";
  }

  const fs::path out = dir / "summary.txt";
  write_text(out, os.str());
  Metadata meta;
  meta.set("stage", "report");
  meta.set("dir", dir.string());
  write_metadata(out, meta);
  return out;
}

}  // namespace rtd
