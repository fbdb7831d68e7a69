#pragma once

#include <string>
#include <vector>

namespace gmorph::cli {

/// Batch front end. args excludes the program name.
/// Exit codes: 0 success, 1 invalid arguments, 2 I/O or parse failure,
/// 3 pipeline error (domain violations such as k out of range).
int run(const std::vector<std::string>& args);

}  // namespace gmorph::cli
