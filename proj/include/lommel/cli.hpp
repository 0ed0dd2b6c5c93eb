#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lommel {

// Full command-line surface; args excludes the program name.  Returns the
// process exit code: 0 success, 1 verification failure, 2 domain or internal
// error, 64 usage error.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lommel
