#pragma once

#include <iosfwd>

#include "ecir/config.hpp"

namespace ecir {

// Subcommand implementations behind the command-line front end; they write
// CSV to `out`, diagnostics to `err`, and return the process exit code
// (0 success, 1 tolerance breach). Input and capacity problems surface as
// exceptions and are mapped to exit codes by the CLI main.
int run_price(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_experiment_s4(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_dump_terms(int n, std::ostream& out);

}  // namespace ecir
