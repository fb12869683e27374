#pragma once

#include <iosfwd>

#include "thincascade/cli/config.hpp"

namespace thincascade::cli {

/// Runs cfg.command, writes its artifacts under cfg.output and a summary to
/// `log`.  Returns 0 on PASS, 1 on FAIL, 2 on INCONCLUSIVE.  Pipeline errors
/// propagate with the failing stage named.
int run_command(const RunConfig& cfg, std::ostream& log);

}  // namespace thincascade::cli
