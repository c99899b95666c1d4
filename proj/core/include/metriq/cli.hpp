#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metriq {

// Runs one command (argument list without the program name), reading stdin
// from `in` when an input path is "-", writing the JSON report to `out`.
// Returns the process exit code: 0 success, 1 domain failure (reported as
// {"error":{"code","detail"}}), 2 usage or input-parse error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out);

} // namespace metriq
