#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitGolden = 3;
inline constexpr int kExitUsage = 64;

// args excludes the program name. Never throws; failures become exit codes
// with a one-line message on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Directory holding theorem_b.txt, section4.txt and covers.txt.
std::string default_golden_dir();

}  // namespace fq::cli
