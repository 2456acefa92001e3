#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace owlrules::cli {

enum class Command { Extract, Classify, Infer };
enum class Format { Text, Structured };

// Process exit statuses.
enum ExitCode : int {
    Ok = 0,
    ParseFailure = 1, // also bad usage
    MergeFailure = 2,
    ContradictionFound = 3,
    CapExceeded = 4,
    StrictViolations = 5,
};

struct RunConfig {
    Command command = Command::Extract;
    std::vector<std::string> inputs;
    std::optional<std::string> facts;
    Format format = Format::Text;
    bool include_nonexecutable = true; // forced off for infer
    std::size_t cap = 10000;
    std::optional<std::string> output; // standard output when empty
    bool strict = false;
};

// Runs one command. `args` excludes the program name. Results go to `out`
// (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace owlrules::cli
