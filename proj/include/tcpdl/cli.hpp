#ifndef TCPDL_CLI_HPP
#define TCPDL_CLI_HPP

#include <iosfwd>

namespace tcpdl::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvalid = 2,
    kInconsistent = 3,
    kQueryFailed = 4,
};

/// Runs one `tcpdl` invocation.  argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcpdl::cli

#endif  // TCPDL_CLI_HPP
