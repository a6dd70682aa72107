#pragma once

#include <iosfwd>

namespace mf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for the `mf` tool. Data goes to `out`, diagnostics to `err`.
/// Returns the process exit code: 0 success/PASS, 1 verification FAIL or
/// |z| > 5, 2 usage or parse error.
///
/// Environment: MF_THREADS overrides the default thread count, MF_SEED the
/// default Monte Carlo seed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mf::cli
