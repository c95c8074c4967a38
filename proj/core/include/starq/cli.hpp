#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace starq {

/// Dispatches one CLI invocation.  Exit status: 0 on success / all checks
/// passing, 1 on a check failure (witnesses printed), 2 on usage or parse
/// errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace starq
