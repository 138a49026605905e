#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hsl/errors.hpp"
#include "hsl/exponents.hpp"

namespace hsl::cli {

/// Runs one command line; returns the process exit status. Summaries go to
/// `out` as JSON, structured errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Exit status for an error code: 10 + code. Parse errors use InvalidArgument.
int exit_status(ErrorCode code);

/// "lo:step:hi" (inclusive) or a comma-separated list.
std::vector<double> parse_alphas(const std::string& text);

/// Samples the hyperbola gap of `spec` over P = p+1, Q = q+1 in (2, pq_max],
/// `steps` values per axis. Columns: P,Q,gap,side.
void write_region_csv(std::ostream& os, const ProblemSpec& spec, double pq_max, int steps);

}  // namespace hsl::cli
