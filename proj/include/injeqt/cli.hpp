#pragma once

#include <iosfwd>

namespace injeqt
{

/// Entry point of the `injeqt` tool. Exit codes: 0 ok, 1 input error, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace injeqt
