#pragma once

#include <cstdint>
#include <vector>

#include "qbnets/verdict.hpp"

namespace qbnets {

inline constexpr double kRumTolerance = 1e-12;
inline constexpr std::size_t kRumMaxParties = 16;

/// Roots-of-unity model on n parties: party j carries exp(2πi(j−1)/n).
struct RumSystem {
  std::size_t n = 1;
  explicit RumSystem(std::size_t n);
};

/// Bit j−1 of the mask selects party j.
using PartyMask = std::uint32_t;

/// |Σ_{j∈J} exp(2πi(j−1)/n)|. Parties are 1-based.
double rum_entropy(const RumSystem& sys, const std::vector<std::size_t>& j_set);
double rum_entropy(const RumSystem& sys, PartyMask mask);

/// S for every mask 0..2ⁿ−1 (entry 0 is the empty set, value 0).
std::vector<double> rum_entropy_table(const RumSystem& sys);

struct RumSuite {
  std::size_t n = 0;
  std::size_t complement_checks = 0;
  std::size_t triangle_checks = 0;  // unordered disjoint pairs, two bounds each
  std::size_t negative_conditionals = 0;
  std::size_t failures = 0;
  /// Binding verdict per family: complement, subadditivity, araki_lieb,
  /// full_set (n ≥ 2) and negative_conditional (n ≥ 2).
  std::vector<CheckVerdict> verdicts;
  bool all_hold() const;
};

/// Exhaustive check over all subsets. Throws InvalidArgument for n > 16.
RumSuite rum_check_suite(const RumSystem& sys);

}  // namespace qbnets
