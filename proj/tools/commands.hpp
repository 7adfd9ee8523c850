#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trp/io.hpp"

namespace trp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericalError = 3,
};

// Each command writes its files under cfg.output.dir and a human-readable
// summary to out. Errors propagate as ConfigError / NumericalError.
void cmd_resonances(const RunConfig& cfg, std::ostream& out);
void cmd_simulate(const RunConfig& cfg, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, std::ostream& out);
void cmd_cnot(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_translate(const RunConfig& cfg, std::ostream& out);

// "3 resonances: -46.63, 0, +46.63"
std::string describe_resonances(const ResonanceSet& set);

// Full command line: trp <command> [--config PATH] [--out DIR] [--workers N]
// [--set KEY=VALUE]... [--timing]. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace trp::cli
