#include <doctest.h>

#include "helpers.hpp"
#include "qbnets/channels.hpp"
#include "qbnets/entropy.hpp"
#include "qbnets/randgen.hpp"

using namespace qbnets;
using namespace testing;

TEST_SUITE("channels") {

TEST_CASE("validate_channel") {
  auto v = validate_channel(KrausChannel::identity(2));
  CHECK(v.valid);
  CHECK(v.max_deviation == 0.0);
  CHECK(validate_channel(KrausChannel(2, 2, {mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)})).valid);
  v = validate_channel(KrausChannel(2, 2, {ComplexMatrix(0.9 * ComplexMatrix::Identity(2, 2))}));
  CHECK_FALSE(v.valid);
  CHECK(v.max_deviation == doctest::Approx(0.19));
  CHECK_THROWS_AS(KrausChannel(2, 2, {ComplexMatrix::Identity(3, 3)}), Error);
}

TEST_CASE("apply_channel") {
  const SubsystemLayout l{{"a", 2}};
  const auto plus = LabeledState::from_ket(l, ket({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}));
  CHECK(max_abs(apply_channel(KrausChannel::identity(2), plus, "a").matrix() - plus.matrix()) == 0.0);
  CHECK(max_abs(apply_channel(KrausChannel::dephasing(2), plus, "a").matrix() -
                ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0)) < 1e-15);

  Rng rng(12);
  const SubsystemLayout ab{{"a", 2}, {"b", 2}};
  for (int t = 0; t < 20; ++t) {
    const auto c = random_channel(2, 2, 3, rng);
    const auto rho = random_density_matrix(ab, 4, rng);
    for (const char* target : {"a", "b"}) {
      ComplexMatrix oracle = ComplexMatrix::Zero(4, 4);
      for (const auto& k : c.kraus()) {
        const ComplexMatrix lifted = std::string(target) == "a" ? kron(k, ComplexMatrix::Identity(2, 2))
                                                                : kron(ComplexMatrix::Identity(2, 2), k);
        oracle += lifted * rho.matrix() * lifted.adjoint();
      }
      CHECK(max_abs(apply_channel(c, rho, target).matrix() - oracle) < 1e-13);
    }
  }
  CHECK_THROWS_AS(apply_channel(KrausChannel::identity(3), plus, "a"), Error);
}

TEST_CASE("rectangular channels change the factor dimension") {
  Rng rng(4);
  const auto c = random_channel(2, 3, 2, rng);
  const auto rho = random_density_matrix(SubsystemLayout{{"a", 2}, {"b", 2}}, 4, rng);
  const auto out = apply_channel(c, rho, "a");
  CHECK(out.layout().dim_of("a") == 3);
  CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-12);
}

TEST_CASE("is_isometry") {
  CHECK(is_isometry(ComplexMatrix::Identity(3, 3)));
  CHECK_FALSE(is_isometry(ComplexMatrix::Constant(2, 2, 1 / std::sqrt(2.0))));
  Rng rng(6);
  CHECK(is_isometry(orthonormalize_columns(random_gaussian_matrix(5, 3, rng))));
}

TEST_CASE("is_unital") {
  CHECK(is_unital(KrausChannel::dephasing(2)));
  Rng rng(1);
  CHECK(is_unital(KrausChannel::unitary(random_unitary(3, rng))));
  const double g = 0.36;
  const KrausChannel damping(2, 2, {mat2(1, 0, 0, std::sqrt(1 - g)), mat2(0, std::sqrt(g), 0, 0)});
  CHECK(validate_channel(damping).valid);
  ComplexMatrix kk = ComplexMatrix::Zero(2, 2);
  for (const auto& k : damping.kraus()) kk += k * k.adjoint();
  CHECK(kk(0, 0).real() == doctest::Approx(1 + g));
  CHECK_FALSE(is_unital(damping));
  CHECK_THROWS_AS(is_unital(random_channel(2, 3, 2, rng)), Error);
}

TEST_CASE("stinespring dilation") {
  CHECK(max_abs(stinespring_dilation(KrausChannel::identity(2)) - ComplexMatrix::Identity(2, 2)) < 1e-15);

  const auto deph = KrausChannel::dephasing(2);
  const auto u = stinespring_dilation(deph);
  CHECK(u.rows() == 4);
  CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(4, 4)) < 1e-12);
  const auto blocks = dilation_blocks(u, 2, 2);
  CHECK(max_abs(blocks[0] - mat2(1, 0, 0, 0)) < 1e-12);
  CHECK(max_abs(blocks[1] - mat2(0, 0, 0, 1)) < 1e-12);

  for (Seed seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    const auto c = random_channel(2, 2, 3, rng);
    const auto d = stinespring_dilation(c);
    CHECK(max_abs(d.adjoint() * d - ComplexMatrix::Identity(6, 6)) < 1e-10);
    const auto ks = dilation_blocks(d, 2, 3);
    double worst = 0;
    for (std::size_t y = 0; y < 3; ++y) worst = std::max(worst, max_abs(ks[y] - c.kraus()[y]));
    CHECK(worst < 1e-10);

    const auto rho = random_density_matrix(SubsystemLayout{{"q", 2}}, 2, rng);
    ComplexMatrix anc = ComplexMatrix::Zero(3, 3);
    anc(0, 0) = 1;
    const LabeledState joint = LabeledState::trusted(SubsystemLayout{{"q", 2}, {"y", 3}},
                                                     d * kron(rho.matrix(), anc) * d.adjoint());
    CHECK(max_abs(partial_trace(joint, {"q"}).matrix() - apply_channel(c, rho, "q").matrix()) < 1e-9);
  }
}

TEST_CASE("induced transition") {
  CHECK(induced_transition(KrausChannel::identity(2)).isApprox(RealMatrix::Identity(2, 2)));
  CHECK(induced_transition(KrausChannel::dephasing(3)).isApprox(RealMatrix::Identity(3, 3)));
  Rng rng(30);
  for (int t = 0; t < 20; ++t) {
    const auto c = random_channel(2, 2, 2, rng);
    const auto tm = induced_transition(c);
    CHECK(is_column_stochastic(tm));
    const auto p = random_distribution(2, rng);
    const LabeledState diag(SubsystemLayout{{"a", 2}}, p.cast<Complex>().asDiagonal().toDenseMatrix());
    const RealVector pushed = apply_channel(c, diag, "a").matrix().diagonal().real();
    CHECK((pushed - tm * p).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("stochastic embedding preserves relative entropy") {
  Rng rng(40);
  for (int t = 0; t < 50; ++t) {
    const auto tm = random_stochastic(3, 3, rng);
    const auto c = KrausChannel::from_stochastic(tm);
    CHECK(validate_channel(c).valid);
    CHECK((induced_transition(c) - tm).cwiseAbs().maxCoeff() < 1e-12);
    const auto p = random_distribution(3, rng);
    const auto q = random_distribution(3, rng);
    auto as_state = [](const RealVector& v) {
      return LabeledState(SubsystemLayout{{"a", 3}}, v.cast<Complex>().asDiagonal().toDenseMatrix());
    };
    const double dq = quantum_relative_entropy(apply_channel(c, as_state(p), "a"), apply_channel(c, as_state(q), "a"));
    CHECK(dq == doctest::Approx(classical_relative_entropy(tm * p, tm * q)).epsilon(1e-9));
  }
}

TEST_CASE("stochastic predicates") {
  RealMatrix t(2, 2);
  t << 0.3, 0.6, 0.7, 0.4;
  CHECK(is_column_stochastic(t));
  CHECK_FALSE(is_doubly_stochastic(t));
  Rng rng(2);
  CHECK(is_doubly_stochastic(random_doubly_stochastic(4, rng)));
  t(0, 0) = -0.1;
  CHECK_FALSE(is_column_stochastic(t));
}

}
