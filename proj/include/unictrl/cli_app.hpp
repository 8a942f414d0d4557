#pragma once

#include <iosfwd>

namespace unictrl {

/// Full CLI dispatch (analyze | place | verify). Returns the process
/// exit code: 0 on success, 1 on analysis-level failures (spectral, LP,
/// oracle, agreement below threshold), 2 on input or usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unictrl
