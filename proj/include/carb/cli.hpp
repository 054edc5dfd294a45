#pragma once

#include <string>

#include "carb/io.hpp"

namespace carb {

// Named run configurations. Throws UsageError for an unknown name.
RunConfig preset_config(const std::string& name);

// Executes a parsed config: streams snapshots, then writes diagnostics.csv
// and manifest.txt into cfg.out_dir.
void execute_run(const RunConfig& cfg, const std::vector<std::string>& defaulted_keys);

// Entry point behind main(); returns the process exit status.
int cli_main(int argc, const char* const* argv);

}  // namespace carb
