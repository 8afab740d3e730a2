#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pwcn/instance.hpp"
#include "pwcn/proximity.hpp"

namespace pwcn::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kUsageError = 2;

// Entry point shared by the binary and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Git blob id: SHA-1 over "blob <size>\0" + content, lower-case hex.
std::string git_blob_hash(std::string_view content);

// Heatmap intensity per token: p_i / max(non-aspect p), 0 on the aspect.
std::vector<double> shades(const Instance& instance,
                           const proximity::ProximityVector& weights);

std::string render_ansi(const Instance& instance,
                        const std::vector<double>& shade);
std::string render_html(const Instance& instance,
                        const proximity::ProximityVector& weights,
                        const std::vector<double>& shade,
                        std::string_view predicted);

}  // namespace pwcn::cli
