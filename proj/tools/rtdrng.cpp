// Command-line front end: generate | sweep | extract | test | report.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rtdrng/config.hpp"
#include "rtdrng/errors.hpp"
#include "rtdrng/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

struct Globals {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::string out = "run";
  std::optional<std::size_t> sequences;
  std::optional<std::size_t> sequence_length;
};

rtd::PipelineConfig resolve(const Globals& g) {
  rtd::PipelineConfig cfg = g.config ? rtd::load_config(*g.config) : rtd::PipelineConfig::defaults();
  if (g.seed) cfg.seed = *g.seed;
  if (g.sequences) cfg.suite.sequences = *g.sequences;
  if (g.sequence_length) cfg.suite.sequence_length = *g.sequence_length;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RTD true random number generator simulation and randomness test battery"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "simulation seed (overrides config)");
  app.add_option("--out", g.out, "run directory")->capture_default_str();
  app.add_option("--sequences", g.sequences, "number of test sequences");
  app.add_option("--sequence-length", g.sequence_length, "bits per test sequence");

  auto* gen = app.add_subcommand("generate", "acquire bits from the simulated device");
  std::size_t count = 1'000'000;
  std::string name = "raw";
  std::optional<double> amplitude;
  bool no_controller = false;
  gen->add_option("--count", count, "number of bits")->capture_default_str();
  gen->add_option("--name", name, "output stem")->capture_default_str();
  gen->add_option("--amplitude", amplitude, "pulse amplitude in mA");
  gen->add_flag("--no-controller", no_controller, "open-loop acquisition");

  auto* sweep = app.add_subcommand("sweep", "current sweeps and switch-current histogram");
  std::string direction = "forward";
  std::size_t repeats = 100;
  sweep->add_option("--direction", direction, "forward or reverse")->capture_default_str();
  sweep->add_option("--repeats", repeats, "number of sweeps")->capture_default_str();

  auto* ext = app.add_subcommand("extract", "hash a bitstream down to its extractable entropy");
  std::optional<std::string> ext_in;
  std::optional<std::string> ext_out;
  ext->add_option("--in", ext_in, "input bitstream (default <out>/raw.bits)");
  ext->add_option("--output", ext_out, "output bitstream (default <out>/extracted.bits)");

  auto* test = app.add_subcommand("test", "run the statistical test battery");
  std::optional<std::string> test_in;
  test->add_option("--in", test_in, "input bitstream (default <out>/extracted.bits)");

  auto* report = app.add_subcommand("report", "summarise a run directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    const fs::path out = g.out;
    if (*report) {
      std::cout << rtd::cmd_report(out).string() << '\n';
      return kPass;
    }
    rtd::PipelineConfig cfg = resolve(g);
    if (*gen) {
      if (amplitude) {
        cfg.pulse.amplitude = *amplitude;
        if (cfg.controller) cfg.controller->amplitude = *amplitude;
      }
      if (no_controller) cfg.controller.reset();
      std::cout << rtd::cmd_generate(cfg, out, count, name).string() << '\n';
      return kPass;
    }
    if (*sweep) {
      std::cout << rtd::cmd_sweep(cfg, out, rtd::sweep_direction_from_name(direction), repeats).string() << '\n';
      return kPass;
    }
    if (*ext) {
      const fs::path in = ext_in ? fs::path(*ext_in) : out / "raw.bits";
      const fs::path dst = ext_out ? fs::path(*ext_out) : out / "extracted.bits";
      std::cout << rtd::cmd_extract(cfg, in, dst).string() << '\n';
      return kPass;
    }
    if (*test) {
      const fs::path in = test_in ? fs::path(*test_in) : out / "extracted.bits";
      const auto rep = rtd::cmd_test(cfg, in, out);
      for (const auto* row : rep.failures()) {
        std::cerr << "FAIL " << rtd::nist::test_name(row->test) << " #" << row->statistic << ": " << row->passed
                  << "/" << row->total << '\n';
      }
      std::cout << (rep.passed() ? "PASS" : "FAIL") << '\n';
      return rep.passed() ? kPass : kFail;
    }
  } catch (const rtd::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const rtd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const rtd::InsufficientEntropy& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
