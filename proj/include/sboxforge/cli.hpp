#pragma once

#include "sboxforge/chaos.hpp"
#include "sboxforge/io.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sboxforge::cli {

enum class Subcommand { Generate, Analyze, Bifurcate, Lyapunov, Bench, Fixtures };

enum ExitCode : int {
    kOk = 0,
    kAuditMismatch = 1,
    kInvalidArguments = 2,
    kMalformedInput = 3,
    kGenerationFailed = 4,
};

struct CliConfig {
    Subcommand subcommand = Subcommand::Generate;

    // Key.
    double x0 = 0.3141;
    double a = 1.5;
    double b = 1e6;
    chaos::MapMode mode = chaos::MapMode::Alg1;

    std::optional<std::filesystem::path> input;
    std::optional<io::TableFormat> input_format;
    std::optional<std::filesystem::path> output;
    /// Unset means hex for tables and json for reports.
    std::optional<io::TableFormat> format;

    bool refine = false;
    std::size_t max_iterations = 10'000'000;
    std::size_t refine_max_passes = 64;

    // bifurcate
    double a_min = 0.1;
    double a_max = 1.9;
    std::size_t a_steps = 400;
    std::size_t samples = 100;
    std::size_t transient = 1000;

    // lyapunov
    std::size_t iterations = 100'000;

    // bench
    std::size_t bench_count = 100'000;
    std::uint64_t seed = 1;

    // fixtures
    std::string fixture = "final";
    bool list_fixtures = false;
    bool audit = false;
    bool strict = false;
};

/// Parses argv-style arguments (args[0] is the program name). Returns the
/// config, or an exit code when parsing finished the run (help or error),
/// with the diagnostic already written.
struct ParseOutcome {
    std::optional<CliConfig> config;
    int exit_code = kOk;
};
ParseOutcome parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes one subcommand. Output goes to config.output when set, otherwise
/// to out; diagnostics are single lines on err.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse + run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sboxforge::cli
