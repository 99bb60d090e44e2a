#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pil {

// Command-line entry point, argv without the program name. Returns the
// process exit code: 0 success, 1 validation failure, 2 cap hit or
// indeterminate result, 3 I/O, schema, or usage error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pil
