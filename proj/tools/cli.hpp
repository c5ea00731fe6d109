#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polycurve::cli {

/// Runs `polycurve` with args (args[0] is the program name). Exit codes: 0
/// ok, 1 domain error or failed check (an error record is written to out), 2
/// usage error (message on err).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace polycurve::cli
