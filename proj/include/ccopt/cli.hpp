#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ccopt/harness.hpp"

// Command line front end: gen / run / oracle / table. parse_args validates
// everything up front and never touches the filesystem; dispatch performs
// the work. Exit codes: 0 success, 1 domain or usage error, 2 I/O error.

namespace ccopt {

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by --help; carries the text to print.
class HelpRequested : public std::runtime_error {
public:
    explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

struct CliCommand {
    std::string verb;        // gen | run | oracle | table
    std::string subcommand;  // instance-i | domset | extreme-points | ...
    std::map<std::string, std::string> options;

    bool has(const std::string& key) const { return options.count(key) > 0; }
    const std::string& get(const std::string& key) const { return options.at(key); }
};

CliCommand parse_args(const std::vector<std::string>& argv);

// Parses the flat key-value experiment config (sections per algorithm).
// `source` names the file in error messages.
ExperimentConfig parse_experiment_config(const std::string& text, const std::string& source);

std::vector<double> parse_beta_list(const std::string& spec);

int dispatch(const CliCommand& cmd, std::ostream& out);

// Full entry point used by the binary: parse, dispatch, map errors to codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ccopt
