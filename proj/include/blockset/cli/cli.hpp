#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blockset::cli {

/// Version stamped into every JSON document as "schema": "blockset.<kind>/N".
inline constexpr int kSchemaVersion = 1;

enum Exit : int {
  kOk = 0,
  /// A verify command found the property false, or repro found a mismatch.
  kPropertyFalse = 1,
  kError = 2,
};

/// Runs one command line (arguments without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count: --threads if given (> 0), else BLOCKSET_THREADS, else the
/// number of hardware threads.
unsigned resolve_threads(int flag);

}  // namespace blockset::cli
