#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mapstab {

/// Exit codes: 0 success or VALID certificate, 2 INVALID certificate,
/// 1 usage, parse or engine error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapstab
