#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wittkit::cli {

/// Runs one CLI invocation. Commands: witt | gw | classify | normalize |
/// qcat | check. Returns the process exit status: 0 success, 2 validation
/// error (including malformed JSON, reported with line and column), 3 cap
/// or obstruction error.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace wittkit::cli
