#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sqdiff::cli {

// Exit codes: 0 success, 1 a checked property failed (details in the JSON),
// 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqdiff::cli
