#pragma once
// Command-line front end. Exposed as a function so tests can drive the
// full argument-to-exit-code path in process.

namespace pswitch {

// Exit codes: 0 success, 1 configuration or validation error,
// 2 solver non-convergence, 3 verification mismatch, 4 I/O error.
int cli_main(int argc, const char* const* argv);

}  // namespace pswitch
