#pragma once

#include <ostream>

namespace mxv::cli {

/// Runs one command line. Returns 0 on success, 1 for usage errors and
/// 2 for parse or data errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mxv::cli
