#include "qbnets/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbnets/error.hpp"

namespace qbnets {

CheckVerdict verdict_leq(std::string id, std::string relation, double lhs, double rhs, double tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double margin;
  if (rhs == inf || lhs == -inf) margin = inf;
  else if (lhs == inf || rhs == -inf) margin = -inf;
  else margin = rhs - lhs;
  CheckVerdict v;
  v.id = std::move(id);
  v.relation = std::move(relation);
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = margin;
  v.holds = margin >= -tol;
  return v;
}

CheckVerdict verdict_eq(std::string id, std::string relation, double lhs, double rhs, double tol) {
  CheckVerdict v;
  v.id = std::move(id);
  v.relation = std::move(relation);
  v.lhs = lhs;
  v.rhs = rhs;
  v.identity = true;
  if (std::isinf(lhs) || std::isinf(rhs)) {
    v.margin = lhs == rhs ? 0.0 : -std::numeric_limits<double>::infinity();
  } else {
    v.margin = -std::abs(lhs - rhs);
  }
  v.holds = v.margin >= -tol;
  return v;
}

const CheckVerdict& binding_verdict(const std::vector<CheckVerdict>& verdicts) {
  if (verdicts.empty()) throw Error(ErrorKind::InvalidArgument, "no verdicts to reduce");
  return *std::min_element(verdicts.begin(), verdicts.end(), [](const auto& a, const auto& b) {
    if (a.holds != b.holds) return !a.holds;
    return a.margin < b.margin;
  });
}

}  // namespace qbnets
