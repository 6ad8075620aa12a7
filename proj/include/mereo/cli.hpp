#ifndef MEREO_CLI_HPP
#define MEREO_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mereo {

// Full command-line surface, callable in-process for tests. args excludes
// the program name. Exit codes: 0 when every requested check passes or the
// searched property is confirmed up to the bound, 1 when a refutation or
// axiom failure is found (the expected outcome for `reproduce`), 2 on
// usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mereo

#endif
