#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lanehmm::cli {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

} // namespace lanehmm::cli
