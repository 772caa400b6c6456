#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wigmod {

/// Command-line entry point. Subcommands: gen, verify, factorize,
/// selftest, report. Returns 0 on pass, 1 on verified failure (the
/// modulus condition is violated or a factorization residual is out of
/// bounds), 2 on usage or I/O errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

/// Convenience overload writing to std::cout / std::cerr.
int cli_main(const std::vector<std::string>& args);

}  // namespace wigmod
