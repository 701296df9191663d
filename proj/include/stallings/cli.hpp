#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stallings {

// One CLI invocation; args excludes the program name. Returns the process
// exit code: 0 success, 1 malformed input (files, words, flags), 2 semantic
// failure (operation defined but inapplicable, caps exceeded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stallings
