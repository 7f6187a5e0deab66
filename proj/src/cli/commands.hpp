#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace involute::cli {

// Runs one subcommand; args excludes the program name.  Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes via a sibling temporary and a rename, so readers never see a partial file.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace involute::cli
