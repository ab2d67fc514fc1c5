#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace latspec::cli {

using EnvLookup = std::function<std::optional<std::string>(std::string const&)>;

/// Process environment.
std::optional<std::string> system_env(std::string const& name);

/// Runs one command line (without the program name). Writes the record to
/// `out` and messages to `err`. Returns 0 on success, 1 on numerical failure,
/// 2 on usage or domain errors.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err, EnvLookup const& env = system_env);

} // namespace latspec::cli
