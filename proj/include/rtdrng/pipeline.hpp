#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "rtdrng/config.hpp"
#include "rtdrng/nist/report.hpp"

namespace rtd {

enum class SweepDirection { Forward, Reverse };

SweepDirection sweep_direction_from_name(const std::string& name);
const char* sweep_direction_name(SweepDirection d);

/// Acquires `count` bits (closed loop when a controller is configured) and
/// writes <out>/<name>.bits, <name>.hist.tsv and, with a controller,
/// <name>.control.tsv. Returns the bitstream path.
std::filesystem::path cmd_generate(const PipelineConfig& cfg, const std::filesystem::path& out,
                                   std::size_t count, const std::string& name = "raw");

/// `repeats` current sweeps in one direction. Writes sweep_<dir>.tsv (I-V
/// traces), sweep_<dir>_switches.tsv and sweep_<dir>_hist.tsv. Returns the
/// histogram path.
std::filesystem::path cmd_sweep(const PipelineConfig& cfg, const std::filesystem::path& out,
                                SweepDirection direction, std::size_t repeats);

/// Hashes `input` block by block into `output` (default <out>/extracted.bits).
std::filesystem::path cmd_extract(const PipelineConfig& cfg, const std::filesystem::path& input,
                                  const std::filesystem::path& output);

/// Splits `input` into the configured sequences, runs the battery and writes
/// report.tsv and report.json into `out`.
nist::SuiteReport cmd_test(const PipelineConfig& cfg, const std::filesystem::path& input,
                           const std::filesystem::path& out);

/// Consolidates a run directory into <dir>/summary.txt. Throws IoError listing
/// every missing artifact.
std::filesystem::path cmd_report(const std::filesystem::path& dir);

}  // namespace rtd
