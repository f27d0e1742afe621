#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cantor {

/// Exit codes: 0 ok, 1 a checked inequality failed, 2 usage/domain/contract,
/// 3 resource/precision/range/resolution.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;

/// Runs one subcommand; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cantor
