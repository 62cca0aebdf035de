#include "qbnets/rum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "qbnets/error.hpp"

namespace qbnets {

namespace {

std::complex<double> root(std::size_t n, std::size_t j0) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j0) / static_cast<double>(n));
}

std::string subset_name(PartyMask mask) {
  std::string out = "{";
  for (std::size_t j = 0; j < 32; ++j) {
    if (mask & (PartyMask{1} << j)) out += (out.size() > 1 ? "," : "") + std::to_string(j + 1);
  }
  return out + "}";
}

// Keeps the lowest-margin verdict of a family.
void keep_worst(std::optional<CheckVerdict>& slot, CheckVerdict v) {
  if (!slot || v.margin < slot->margin) slot = std::move(v);
}

}  // namespace

RumSystem::RumSystem(std::size_t parties) : n(parties) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "RUM needs at least one party");
}

double rum_entropy(const RumSystem& sys, const std::vector<std::size_t>& j_set) {
  if (j_set.empty()) throw Error(ErrorKind::InvalidArgument, "RUM entropy of the empty set");
  std::complex<double> sum = 0.0;
  for (std::size_t j : j_set) {
    if (j < 1 || j > sys.n) {
      throw Error(ErrorKind::InvalidArgument, "party " + std::to_string(j) + " outside 1.." + std::to_string(sys.n));
    }
    sum += root(sys.n, j - 1);
  }
  return std::abs(sum);
}

double rum_entropy(const RumSystem& sys, PartyMask mask) {
  if (sys.n > 32) throw Error(ErrorKind::InvalidArgument, "party mask holds at most 32 parties");
  if (mask == 0) throw Error(ErrorKind::InvalidArgument, "RUM entropy of the empty set");
  if (sys.n < 32 && (mask >> sys.n) != 0) throw Error(ErrorKind::InvalidArgument, "mask selects parties beyond n");
  std::complex<double> sum = 0.0;
  for (std::size_t j = 0; j < sys.n; ++j) {
    if (mask & (PartyMask{1} << j)) sum += root(sys.n, j);
  }
  return std::abs(sum);
}

std::vector<double> rum_entropy_table(const RumSystem& sys) {
  if (sys.n > kRumMaxParties) {
    throw Error(ErrorKind::InvalidArgument, "exhaustive RUM tables need n <= " + std::to_string(kRumMaxParties));
  }
  const std::size_t count = std::size_t{1} << sys.n;
  std::vector<std::complex<double>> sums(count, 0.0);
  std::vector<double> out(count, 0.0);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    sums[mask] = sums[mask & (mask - 1)] + root(sys.n, low);
    out[mask] = std::abs(sums[mask]);
  }
  return out;
}

bool RumSuite::all_hold() const {
  return failures == 0 && std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.holds; });
}

RumSuite rum_check_suite(const RumSystem& sys) {
  const auto s = rum_entropy_table(sys);
  const PartyMask full = static_cast<PartyMask>((std::size_t{1} << sys.n) - 1);
  RumSuite suite;
  suite.n = sys.n;
  std::optional<CheckVerdict> complement, subadd, araki;

  for (PartyMask j = 1; j < full; ++j) {
    auto v = verdict_eq("rum_complement", "S(" + subset_name(j) + ")=S(" + subset_name(full ^ j) + ")", s[j],
                        s[full ^ j], kRumTolerance);
    ++suite.complement_checks;
    if (!v.holds) ++suite.failures;
    keep_worst(complement, std::move(v));
  }

  double most_negative = 0.0;
  PartyMask neg_j = 0, neg_k = 0;
  for (PartyMask j = 1; j <= full; ++j) {
    // Submasks k of the complement with k > j give each unordered pair once.
    const PartyMask rest = full ^ j;
    for (PartyMask k = rest; k != 0; k = (k - 1) & rest) {
      if (k < j) continue;
      const double joint = s[j | k];
      for (const auto& [given, target] : {std::pair{j, k}, std::pair{k, j}}) {
        const double cond = joint - s[given];
        if (cond < -kRumTolerance) ++suite.negative_conditionals;
        if (cond < most_negative) {
          most_negative = cond;
          neg_j = given;
          neg_k = target;
        }
      }
      ++suite.triangle_checks;
      const double sa = joint - (s[j] + s[k]);
      const double al = std::abs(s[j] - s[k]) - joint;
      if (sa > kRumTolerance || al > kRumTolerance) ++suite.failures;
      if (!subadd || -sa < subadd->margin) {
        subadd = verdict_leq("rum_subadditivity", "S(" + subset_name(j | k) + ")<=S(" + subset_name(j) + ")+S(" +
                                                      subset_name(k) + ")",
                             joint, s[j] + s[k], kRumTolerance);
      }
      if (!araki || -al < araki->margin) {
        araki = verdict_leq("rum_araki_lieb", "|S(" + subset_name(j) + ")-S(" + subset_name(k) + ")|<=S(" + subset_name(j | k) + ")",
                            std::abs(s[j] - s[k]), joint, kRumTolerance);
      }
    }
  }

  if (complement) suite.verdicts.push_back(*complement);
  if (subadd) suite.verdicts.push_back(*subadd);
  if (araki) suite.verdicts.push_back(*araki);
  if (sys.n >= 2) {
    auto total = verdict_eq("rum_full_set", "S(" + subset_name(full) + ")=0", s[full], 0.0, kRumTolerance);
    if (!total.holds) ++suite.failures;
    suite.verdicts.push_back(std::move(total));
    // Holds when some conditional value is strictly negative.
    CheckVerdict neg = verdict_leq("rum_negative_conditional",
                                   neg_j ? "S(" + subset_name(neg_k) + "|" + subset_name(neg_j) + ")<0"
                                         : std::string("S(K|J)<0 for some J,K"),
                                   most_negative, 0.0, 0.0);
    neg.holds = most_negative < -kRumTolerance;
    if (!neg.holds) ++suite.failures;
    suite.verdicts.push_back(std::move(neg));
  }
  for (auto& v : suite.verdicts) v.dims = {sys.n};
  return suite;
}

}  // namespace qbnets
