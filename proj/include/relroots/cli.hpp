#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relroots {

// Front end for all subcommands. Exit codes: 0 success, 1 domain/validation
// error (one-line diagnostic on err), 2 internal integrity failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relroots
