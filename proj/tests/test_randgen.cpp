#include <doctest.h>

#include <set>

#include "qbnets/channels.hpp"
#include "qbnets/purestate.hpp"
#include "qbnets/randgen.hpp"

using namespace qbnets;

TEST_SUITE("randgen") {

TEST_CASE("seeds") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  std::set<Seed> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(1, 5) != derive_seed(2, 5));
}

TEST_CASE("generator v1 is pinned") {
  // std::mt19937_64 with the default seed yields 9981545732273789042 as its
  // 10000th output.
  std::mt19937_64 ref;
  ref.discard(9999);
  CHECK(ref() == 9981545732273789042ULL);
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("classical objects") {
  CHECK(random_classical(ClassicalKind::Stochastic, 3, 4, 5) == random_classical(ClassicalKind::Stochastic, 3, 4, 5));
  const auto d = random_classical(ClassicalKind::Distribution, 5, 1, 1);
  CHECK(d.sum() == doctest::Approx(1.0));
  CHECK(d.minCoeff() >= 0.0);
  const auto ds = random_classical(ClassicalKind::DoublyStochastic, 3, 3, 2);
  CHECK((ds.colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK((ds.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  const auto f = random_classical(ClassicalKind::DeterministicFunction, 4, 4, 3);
  for (Eigen::Index c = 0; c < 4; ++c) {
    CHECK((f.col(c).array() == 1.0).count() == 1);
    CHECK((f.col(c).array() == 0.0).count() == 3);
  }
  CHECK(is_column_stochastic(random_classical(ClassicalKind::Stochastic, 2, 6, 4)));
}

TEST_CASE("density matrices") {
  const SubsystemLayout l{{"a", 2}, {"b", 2}};
  for (Seed s = 1; s <= 20; ++s) {
    CHECK(is_pure(random_density_matrix(l, 1, s)));
    const auto full = random_density_matrix(SubsystemLayout{{"a", 2}}, 2, s);
    const auto ev = eig_hermitian(full.matrix()).values;
    CHECK(ev.sum() == doctest::Approx(1.0));
    CHECK(ev(0) > 1e-12);
    CHECK(diagnose_state(random_density_matrix(l, 3, s).matrix()).valid());
  }
  int distinct = 0;
  for (Seed s = 1; s <= 100; ++s) {
    distinct += trace_distance(random_density_matrix(l, 4, 2 * s).matrix(),
                               random_density_matrix(l, 4, 2 * s + 1).matrix()) > 1e-6;
  }
  CHECK(distinct == 100);
  CHECK(max_abs(random_density_matrix(l, 2, 9).matrix() - random_density_matrix(l, 2, 9).matrix()) == 0.0);
  CHECK_THROWS_AS(random_density_matrix(l, 0, 1), Error);
  CHECK_THROWS_AS(random_density_matrix(l, 5, 1), Error);
}

TEST_CASE("channels") {
  for (Seed s = 1; s <= 50; ++s) {
    const auto u = random_channel(2, 2, 1, s);
    CHECK(max_abs(u.kraus()[0].adjoint() * u.kraus()[0] - ComplexMatrix::Identity(2, 2)) < 1e-10);
    CHECK(validate_channel(random_channel(2, 2, 2, s)).valid);
    CHECK(validate_channel(random_channel(3, 2, 2, s)).valid);
    const auto c = random_channel(2, 2, 3, s);
    const auto blocks = dilation_blocks(stinespring_dilation(c), 2, 3);
    for (std::size_t y = 0; y < 3; ++y) CHECK(max_abs(blocks[y] - c.kraus()[y]) < 1e-10);
  }
  CHECK_THROWS_AS(random_channel(5, 2, 2, 1), Error);
  CHECK_THROWS_AS(random_channel(2, 2, 0, 1), Error);
}

TEST_CASE("isometries and unitaries") {
  Rng rng(10);
  const auto v = random_isometry(5, 2, rng);
  CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(2, 2)) < 1e-12);
  const auto u = random_unitary(4, rng);
  CHECK(max_abs(u * u.adjoint() - ComplexMatrix::Identity(4, 4)) < 1e-12);
  const auto t = random_amplitude_table(3, 4, rng);
  for (Eigen::Index c = 0; c < 4; ++c) CHECK(t.col(c).norm() == doctest::Approx(1.0));
}

}
