// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace nomalab::cli {

// full command-line entry point; returns the process exit code
// (0 success, 2 configuration error)
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace nomalab::cli
