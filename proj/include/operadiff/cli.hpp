#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace operadiff {

// Exit codes: 0 all checks pass, 1 a verified violation, 2 input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace operadiff
