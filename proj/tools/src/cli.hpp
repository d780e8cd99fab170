#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace evoxplain::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kTransportError = 3;
inline constexpr int kProtocolError = 4;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evoxplain::cli
