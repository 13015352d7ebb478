#pragma once

namespace equinorm::cli {

// Full command-line surface: generate | solve | verify | tradeoff.
// Returns the process exit code: 0 ok, 2 validation error, 3 size cap,
// 4 certificate violation, 5 numeric failure.
int run(int argc, const char* const* argv);

}  // namespace equinorm::cli
