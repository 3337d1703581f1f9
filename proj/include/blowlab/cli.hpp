#pragma once

namespace blowlab {

inline constexpr const char* kToolVersion = "blowlab 0.1.0";

/// Full command-line surface (simulate / monitor / ode-verify / lemma-test /
/// fit / report). Returns the process exit code: 0 success, 1 input error,
/// 2 failed property or check.
int run_cli(int argc, const char* const* argv);

}  // namespace blowlab
