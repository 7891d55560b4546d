#ifndef APPROXSYS_CLI_HPP
#define APPROXSYS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace approxsys {

/// Runs the command line given without the program name.
/// Returns 0 on success, 1 when verification fails and 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace approxsys

#endif  // APPROXSYS_CLI_HPP
