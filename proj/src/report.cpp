#include "mader/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace mader {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json report_json(const InversionReport& rep, std::uint64_t seed) {
  Json j;
  j["estimate"] = number_or_null(rep.estimate);
  j["truth"] = rep.truth ? number_or_null(*rep.truth) : Json(nullptr);
  const auto rel = rep.rel_error();
  j["rel_error"] = rel ? number_or_null(*rel) : Json(nullptr);
  j["constant"] = number_or_null(rep.constant_used.value);
  j["residual"] = number_or_null(rep.residual);
  j["seed"] = seed;
  j["derivative"] = number_or_null(rep.derivative);
  j["derivative_order"] = rep.derivative_order;
  j["conditioning"] = number_or_null(rep.conditioning);
  j["space"] = to_string(rep.constant_used.kind);
  j["n"] = rep.constant_used.n;
  j["k"] = rep.constant_used.k;
  j["grid_points"] = rep.profile.grid.size();
  j["meta"] = rep.profile.meta;
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_profile_csv(std::ostream& os, const RadialProfile& profile) {
  os << "r,value\n";
  char buf[64];
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", profile.grid[i], profile.values[i]);
    os << buf;
  }
}

std::string profile_csv(const RadialProfile& profile) {
  std::ostringstream os;
  write_profile_csv(os, profile);
  return os.str();
}

}  // namespace mader
