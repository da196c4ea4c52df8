#pragma once

// Command-line front end: render, dimension, entropy and verify workflows
// with seeded, byte-reproducible outputs.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "betafrac/params.hpp"

namespace betafrac::cli {

enum ExitCode : int {
    kExitPass = 0,
    kExitCheckFailure = 1,
    kExitUsage = 2,
    kExitResource = 3,
};

/// Rejected command-line input (exit status 2).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Command { render, dimension, entropy, verify };
enum class Method { rectangles, cloud, formula };
enum class Suite { conjugacy, injectivity, mixing, covering, parry, all };

inline constexpr std::uint64_t kDefaultSeed = 1;

struct RunConfig {
    Command command = Command::verify;
    Params params{kGoldenRatio, 1.0 / 3.0};
    /// Set when --beta or --tau was given; verify then runs its suites at
    /// this pair alone instead of the standard grid.
    bool params_explicit = false;
    std::uint64_t seed = kDefaultSeed;
    /// Output path prefix; extensions are appended per file.
    std::string out;

    // render
    std::size_t width = 512;
    std::size_t height = 512;
    std::size_t burn_in = 64;
    std::size_t keep = 1;
    bool write_csv = false;

    // dimension
    Method method = Method::rectangles;
    std::vector<std::size_t> depths{2, 3, 4, 5, 6, 7, 8};

    // entropy
    std::size_t word_len = 25;
    std::size_t block_len = 12;
    double block_tol = 0.05;

    // verify
    Suite suite = Suite::all;

    /// Point, digit or window count; 0 selects the command's default.
    std::size_t samples = 0;
    bool check = false;
    /// Slope tolerance (dimension) or topological-entropy tolerance (entropy).
    std::optional<double> tol;
};

/// Parses "a..b" or a comma-separated list.
std::vector<std::size_t> parse_depths(const std::string& text);

/// Accepts a decimal, a fraction "p/q" or "phi".
double parse_real(const std::string& text);

/// Parses argv-style arguments (without the program name). Throws UsageError.
/// Returns std::nullopt when help was requested and printed to `out`.
std::optional<RunConfig> parse_command_line(std::span<const std::string> args, std::ostream& out);

int run_render(const RunConfig& cfg, std::ostream& log);
int run_dimension(const RunConfig& cfg, std::ostream& log);
int run_entropy(const RunConfig& cfg, std::ostream& log);
int run_verify(const RunConfig& cfg, std::ostream& log);

/// Dispatches on cfg.command.
int run(const RunConfig& cfg, std::ostream& log);

/// Full entry point: parse, run, map errors to exit codes.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace betafrac::cli
