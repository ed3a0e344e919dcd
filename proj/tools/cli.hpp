#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace forge {

// Exit codes: 0 all verifications pass, 1 a verification failed, 2 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace forge
