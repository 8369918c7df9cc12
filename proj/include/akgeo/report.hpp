#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace akgeo {

enum class CheckStatus { Pass, Fail, Error };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Error: return "error";
  }
  return "?";
}

// One named verification result. status is pass iff max_residual <= tol;
// lower-bound style checks encode their shortfall as the residual (negative
// when satisfied) with tol = 0 so the same rule applies.
struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::Error;
  double max_residual = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double ms = 0.0;

  static CheckReport make(std::string name, double max_residual, double tol, int samples,
                          std::uint64_t seed) {
    CheckReport r;
    r.name = std::move(name);
    r.max_residual = max_residual;
    r.tol = tol;
    r.samples = samples;
    r.seed = seed;
    r.status = max_residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
  }
};

inline bool all_passed(const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports)
    if (r.status != CheckStatus::Pass) return false;
  return true;
}

}  // namespace akgeo
