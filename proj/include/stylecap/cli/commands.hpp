#ifndef STYLECAP_CLI_COMMANDS_HPP_
#define STYLECAP_CLI_COMMANDS_HPP_

#include <string>
#include <vector>

#include "stylecap/cli/config.hpp"

namespace stylecap::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConstraint = 3;

// Each command validates its inputs before writing anything, reports problems
// on stderr, and returns an exit code.
int cmd_features_synth(const RunConfig& cfg);
int cmd_augment(const RunConfig& cfg);
int cmd_train(const RunConfig& cfg);
int cmd_generate(const RunConfig& cfg);
int cmd_eval(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg, const std::vector<std::string>& run_dirs);

}  // namespace stylecap::cli

#endif  // STYLECAP_CLI_COMMANDS_HPP_
