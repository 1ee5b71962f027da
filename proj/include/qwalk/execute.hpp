#pragma once

#include <iosfwd>

#include "qwalk/config.hpp"

namespace qwalk {

/// Runs the configured command and writes its artifacts under cfg.out_dir,
/// printing a one-screen summary to `out`. Dry-run configs only validate and
/// print the execution plan. Throws Config/Contract/IoError on failure.
void execute(const RunConfig& cfg, std::ostream& out);

}  // namespace qwalk
