#ifndef GRAMLAB_CLI_HPP
#define GRAMLAB_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "gramlab/scalar.hpp"

namespace gramlab {

/// Process exit codes. Usage problems are 2; two config defects that the
/// help text calls out specially get their own codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,        // verification failure or degenerate input
    kExitUsage = 2,          // unknown command / flag / malformed invocation
    kExitIo = 3,             // file could not be read or written
    kExitMissingFamily = 4,  // command needs a family and none was given
    kExitBadNMax = 5,        // non-positive or too-small n-max
};

enum class Command {
    ratio,
    shifted_ratio,
    bounds,
    distance,
    charpoly,
    verify,
    probe,
};

enum class ScalarMode { exact, floating, automatic };
enum class OutputFormat { json, csv };

/// A fully validated run configuration. `echo` carries the resolved
/// settings as strings for the output metadata block.
struct RunConfig {
    Command command = Command::verify;

    std::string family_kind;  // monomial | logpower | csv | custom (empty if n/a)
    std::size_t m = 1;
    std::filesystem::path family_path;

    std::size_t n_max = 100;
    bool n_max_explicit = false;
    std::size_t drop_index = 0;
    std::size_t sample_every = 1;
    std::size_t anchor_interval = 64;

    ScalarMode mode = ScalarMode::automatic;
    Tolerance tol{};
    std::uint64_t seed = 7;

    // verify
    std::size_t instances = 200;
    std::size_t max_order = 8;

    // probe
    std::size_t samples = 8;

    // charpoly / distance inputs
    std::filesystem::path matrix_path;
    std::string lambda_csv;
    std::string vector_csv;

    std::filesystem::path out_path;  // resolved (env-adjusted) output file
    OutputFormat format = OutputFormat::json;

    std::map<std::string, std::string> echo;

    /// Exact unless the run is float-only (log-power family) or too long
    /// for comfortable rationals.
    bool use_exact() const {
        if (mode == ScalarMode::exact) return true;
        if (mode == ScalarMode::floating) return false;
        return family_kind != "logpower" && n_max <= 512;
    }
};

/// Thrown by parse_config; carries the process exit code.
class UsageError : public Error {
public:
    UsageError(const std::string& msg, int code = kExitUsage) : Error(msg), code(code) {}
    int code;
};

/// Parses argv (plus an optional key=value config file named by --config;
/// command-line flags win over file values). Throws UsageError on any
/// invalid input. argv[0] is the program name.
RunConfig parse_config(int argc, const char* const* argv);

/// Executes a validated config: writes the output artifact, prints a
/// one-line summary to stdout, and returns the process exit code.
int run(const RunConfig& config);

/// parse + run + error reporting; the whole CLI behind main().
int cli_main(int argc, const char* const* argv);

}  // namespace gramlab

#endif
