#include <doctest.h>

#include <complex>
#include <numbers>

#include "qbnets/error.hpp"
#include "qbnets/rum.hpp"

using namespace qbnets;

namespace {

double direct(std::size_t n, std::initializer_list<std::size_t> js) {
  std::complex<double> s = 0;
  for (auto j : js) s += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j - 1) / static_cast<double>(n));
  return std::abs(s);
}

}  // namespace

TEST_SUITE("rum") {

TEST_CASE("entropies") {
  const RumSystem two(2);
  CHECK(rum_entropy(two, std::vector<std::size_t>{1}) == doctest::Approx(1.0));
  CHECK(rum_entropy(two, std::vector<std::size_t>{1, 2}) < 1e-12);
  const RumSystem six(6);
  CHECK(rum_entropy(six, std::vector<std::size_t>{1, 2}) == doctest::Approx(std::sqrt(3.0)));
  CHECK(rum_entropy(six, PartyMask{0b000011}) == doctest::Approx(std::sqrt(3.0)));
  CHECK(rum_entropy(RumSystem(7), std::vector<std::size_t>{2, 5, 6}) == doctest::Approx(direct(7, {2, 5, 6})));
  CHECK_THROWS_AS(rum_entropy(two, std::vector<std::size_t>{}), Error);
  CHECK_THROWS_AS(rum_entropy(two, std::vector<std::size_t>{3}), Error);
  CHECK_THROWS_AS(RumSystem(0), Error);
}

TEST_CASE("table agrees with direct sums") {
  const RumSystem sys(9);
  const auto table = rum_entropy_table(sys);
  REQUIRE(table.size() == 512);
  CHECK(table[0] == 0.0);
  for (PartyMask m = 1; m < 512; ++m) CHECK(table[m] == doctest::Approx(rum_entropy(sys, m)).epsilon(1e-12));
}

TEST_CASE("suite") {
  auto s = rum_check_suite(RumSystem(2));
  CHECK(s.all_hold());
  CHECK(s.complement_checks == 2);
  CHECK(s.triangle_checks == 1);
  CHECK(s.negative_conditionals >= 1);

  s = rum_check_suite(RumSystem(3));
  CHECK(s.all_hold());
  CHECK(s.triangle_checks == 6);

  s = rum_check_suite(RumSystem(8));
  CHECK(s.all_hold());
  CHECK(s.complement_checks == 254);
  CHECK(s.triangle_checks == 3025);

  s = rum_check_suite(RumSystem(1));
  CHECK(s.all_hold());
  CHECK_THROWS_AS(rum_check_suite(RumSystem(17)), Error);
}

}
