#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expbern/types.hpp"

namespace expbern::cli {

/// Invalid invocations (bad literals, missing fields, a >= b) exit with
/// code 2; computational failures exit with code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex literal grammar: "re", "imi", "re+imi", "re-imi" (also bare
/// "i" / "-i"). Examples: 0, 1i, -1i, 0.5-2i, 1e-3+2.5i.
cplx parse_complex(const std::string& text);

/// Formats z in the same grammar at 17 significant digits.
std::string format_complex_literal(cplx z);

struct RunConfig {
    std::string command;
    std::vector<std::string> eig_literals;
    std::vector<cplx> eigs;
    std::optional<std::pair<double, double>> interval;
    std::optional<std::pair<int, int>> fix;  // indices into eigs as typed
    std::string function;
    int samples = 512;
    std::vector<int> n_list;
    std::string out;            // empty: stdout
    std::string format = "csv"; // csv | json
};

struct ParseResult {
    std::optional<RunConfig> config;  // empty on --help or parse error
    int exit_code = 0;
};

/// Parses argv (and an optional --config file; flags override file values,
/// unknown keys are rejected). Does not throw; errors land in exit_code.
ParseResult parse_args(int argc, const char* const* argv);

/// Renders a config as a config-file string; parse_args on
/// {"--config", <file>, <command>} reproduces the config.
std::string render_config(const RunConfig& config);

/// Executes a parsed config, writing the artifact to `out`. Throws
/// UsageError for invalid configurations and Error for computational
/// failures.
void run_config(const RunConfig& config, std::ostream& out);

/// Full command-line entry point: parse, dispatch, map exceptions to exit
/// codes 0/1/2.
int cli_main(int argc, const char* const* argv);

}  // namespace expbern::cli
