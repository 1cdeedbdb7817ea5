#pragma once

#include "mader/inversion.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace mader {

using Json = nlohmann::ordered_json;

/// Scalar result: estimate, truth, rel_error, constant, residual, seed, then
/// the fit diagnostics and the profile metadata. Missing truth is null.
Json report_json(const InversionReport& rep, std::uint64_t seed);

/// Deterministic text form (two-space indent, trailing newline).
std::string dump_json(const Json& j);

/// CSV with header "r,value", numbers at 17 significant digits.
std::string profile_csv(const RadialProfile& profile);
void write_profile_csv(std::ostream& os, const RadialProfile& profile);

/// Shortest text that round-trips the double.
std::string format_double(double v);

}  // namespace mader
