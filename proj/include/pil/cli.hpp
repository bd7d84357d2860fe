#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pil::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kNumeric = 3,
};

/// Runs one `pil` invocation. `args` excludes the program name. Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pil::cli
