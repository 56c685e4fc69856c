#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toda::cli {

// Runs one subcommand. args excludes the program name. Returns 0 when every
// check passes, 1 on a verification failure and 2 on a usage error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toda::cli
