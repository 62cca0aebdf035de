#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qbnets {

/// Absolute pass tolerance (nats) shared by every checker.
inline constexpr double kCheckTolerance = 1e-9;

/// Outcome of one inequality (lhs ≤ rhs) or identity (lhs = rhs) check.
///
/// For inequalities margin = rhs − lhs, with x ≤ +∞ always holding and
/// +∞ ≤ finite never holding. For identities margin = −|lhs − rhs|.
struct CheckVerdict {
  std::string id;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = false;
  bool identity = false;
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims;
};

CheckVerdict verdict_leq(std::string id, std::string relation, double lhs, double rhs,
                         double tol = kCheckTolerance);
CheckVerdict verdict_eq(std::string id, std::string relation, double lhs, double rhs,
                        double tol = kCheckTolerance);

/// The verdict with the smallest margin; failing verdicts win ties.
const CheckVerdict& binding_verdict(const std::vector<CheckVerdict>& verdicts);

}  // namespace qbnets
