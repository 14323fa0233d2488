#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "a1lab/enumerate.hpp"

namespace a1lab {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

/// Maximum number of solution points listed in a report.
inline constexpr std::size_t kListedSolutions = 1024;

/// Outcome of a sampling verification. A fail verdict always carries a witness.
struct CheckReport {
  std::uint64_t points_examined = 0;
  std::uint64_t solutions_found = 0;
  std::vector<Point> solutions;  // empty when more than kListedSolutions were found
  std::optional<int> dimension_estimate;
  std::optional<int> codim_observed;
  Verdict verdict = Verdict::inconclusive;
  std::optional<Point> witness;
  std::uint64_t seed = 0;
  std::optional<double> wall_time_ms;
  std::string message;

  void list_solutions(const std::vector<Point>& pts) {
    solutions_found = pts.size();
    if (pts.size() <= kListedSolutions) solutions = pts;
  }
};

}  // namespace a1lab
