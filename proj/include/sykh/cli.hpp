#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sykh/report.hpp"

namespace sykh {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_compute = 3, exit_io = 4 };

enum class Command { twopoint, spectral, sff, otoc, chaos_scan, mc, verify };
enum class Format { csv, json };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a run depends on. Rates in units of gamma0, times in 1/gamma0.
struct RunConfig {
    Command command = Command::twopoint;
    std::vector<int> q{4};
    std::optional<double> J;  // default: J = 2^(q-2), so gamma0 = 1
    std::vector<double> u_over_gamma0{1.0};
    double t_max = 10.0;
    int n_points = 401;
    double omega_max = 8.0;
    double u_max = 6.0;
    Format format = Format::csv;
    bool plot = false;
    std::string out;       // empty: standard output
    std::string plot_out;  // empty: derived from out
    // Monte Carlo
    int n_sites = 4;
    int samples = 200;
    std::uint64_t seed = 1;
    std::optional<double> dt;  // default: 0.05 / max(J, U)
    int trace_vectors = 8;

    bool operator==(const RunConfig&) const = default;
};

/// Parses argv (argv[0] is the program name). Throws UsageError naming the
/// offending token. A --config file of `key = value` lines supplies any flag;
/// flags given on the command line take precedence. Returns nullopt when
/// help was requested (help text written to help_out).
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& help_out);

Json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& meta);

struct RunResult {
    Table table;
    Json summary = Json::object();      // derived scalars (kappa, peaks, check counts)
    std::vector<std::string> warnings;  // per-point failures that did not abort the run
    bool all_checks_passed = true;      // verify only
};

/// Computes the table for a validated configuration.
RunResult compute(const RunConfig& cfg);
/// SVG for a computed table.
std::string plot_for(const RunConfig& cfg, const Table& table);
/// Serialized result in the configured format.
std::string render(const RunConfig& cfg, const RunResult& result);

/// Full CLI: parse, compute, write. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sykh
