#pragma once

#include <ostream>

namespace qaoarec::cli {

// Runs one subcommand. Returns 0 on success, 1 on domain errors (bad data,
// missing files, schema mismatches) and 2 on usage errors.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qaoarec::cli
