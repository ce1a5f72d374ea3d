#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifstk::cli {

// Runs one ifstk command line. Returns 0 on success, 1 on usage or
// validation errors, 2 when a declared contract band is violated.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ifstk::cli
