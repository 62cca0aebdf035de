#include <doctest.h>

#include "helpers.hpp"
#include "qbnets/entropy.hpp"
#include "qbnets/randgen.hpp"

using namespace qbnets;
using namespace testing;

TEST_SUITE("entropy") {

TEST_CASE("shannon entropy") {
  CHECK(shannon_entropy(RealVector::Constant(4, 0.25)) == doctest::Approx(std::log(4.0)));
  CHECK(shannon_entropy(RealVector::Unit(3, 1)) == 0.0);
}

TEST_CASE("classical functionals") {
  RealMatrix copy = RealMatrix::Identity(3, 3);
  const auto p = joint_from_channel("y", "x", copy, RealVector::Constant(3, 1.0 / 3));
  CHECK(classical_entropy(Quantity::conditional({"y"}, {"x"}), p) == doctest::Approx(0.0));
  CHECK(classical_entropy(Quantity::conditional({"x"}, {"y"}), p) == doctest::Approx(0.0));

  RealVector pxy(4);
  pxy << 0.4, 0.1, 0.1, 0.4;
  const JointDist j(SubsystemLayout{{"x", 2}, {"y", 2}}, pxy);
  double oracle = 0;
  for (int i = 0; i < 4; ++i) oracle += pxy(i) * std::log(pxy(i) / 0.25);
  CHECK(classical_entropy(Quantity::mutual({"x"}, {"y"}), j) == doctest::Approx(oracle));
  CHECK(oracle == doctest::Approx(0.8 * std::log(1.6) + 0.2 * std::log(0.4)));
}

TEST_CASE("classical relative entropy") {
  RealVector p(2), q(2);
  p << 0.75, 0.25;
  q << 0.5, 0.5;
  CHECK(classical_relative_entropy(p, p) == 0.0);
  CHECK(classical_relative_entropy(p, q) == doctest::Approx(0.75 * std::log(1.5) + 0.25 * std::log(0.5)));
  CHECK(std::isinf(classical_relative_entropy(RealVector::Unit(2, 0), RealVector::Unit(2, 1))));
  CHECK(classical_relative_entropy(RealVector::Unit(2, 0), p) == doctest::Approx(-std::log(0.75)));
}

TEST_CASE("von Neumann entropy") {
  const SubsystemLayout a{{"a", 2}};
  const LabeledState mixed(a, ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(0.6931).epsilon(1e-4));
  CHECK(nats_to_bits(von_neumann_entropy(mixed)) == doctest::Approx(1.0));

  const auto b = LabeledState::from_ket(SubsystemLayout{{"a", 2}, {"b", 2}}, bell());
  CHECK(quantum_entropy(Quantity::conditional({"b"}, {"a"}), b) == doctest::Approx(-kLn2));
  CHECK(quantum_entropy(Quantity::mutual({"b"}, {"a"}), b) == doctest::Approx(2 * kLn2));
  CHECK(quantum_entropy(Quantity::entropy({"a", "b"}), b) == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density_matrix(SubsystemLayout{{"a", 3}}, 3, rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 3);
    CHECK(von_neumann_entropy(rho) == doctest::Approx(xlogx_sum(ev)).epsilon(1e-12));
  }
}

TEST_CASE("quantum relative entropy") {
  const SubsystemLayout a{{"a", 2}};
  Rng rng(3);
  const auto rho = random_density_matrix(a, 2, rng);
  CHECK(std::abs(quantum_relative_entropy(rho, rho)) < 1e-10);

  const LabeledState d(a, mat2(0.25, 0, 0, 0.75));
  const LabeledState maxmix(a, ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(quantum_relative_entropy(d, maxmix) == doctest::Approx(kLn2 - von_neumann_entropy(d)));
  CHECK(std::isinf(quantum_relative_entropy(LabeledState(a, mat2(1, 0, 0, 0)), LabeledState(a, mat2(0, 0, 0, 1)))));
  for (int t = 0; t < 20; ++t) {
    const auto r = random_density_matrix(a, 2, rng);
    const auto s = random_density_matrix(a, 2, rng);
    CHECK(quantum_relative_entropy(r, s) >= -1e-12);
    CHECK(quantum_relative_entropy(r, maxmix) == doctest::Approx(kLn2 - von_neumann_entropy(r)));
  }
}

TEST_CASE("quantity parsing") {
  const auto q = Quantity::parse("S(b:a|e)");
  CHECK(q.kind == QuantityKind::ConditionalMutual);
  CHECK(q.first == std::vector<std::string>{"b"});
  CHECK(q.second == std::vector<std::string>{"a"});
  CHECK(q.given == std::vector<std::string>{"e"});
  CHECK(Quantity::parse("H(a,b)").first == std::vector<std::string>{"a", "b"});
  CHECK(Quantity::parse("S(b|a)").kind == QuantityKind::Conditional);
  CHECK(Quantity::parse(" S( b : a ) ").kind == QuantityKind::Mutual);
  CHECK(Quantity::parse("S(b:a|e)").to_string() == "S(b:a|e)");
  CHECK_THROWS_AS(Quantity::parse("S(a"), Error);
  CHECK_THROWS_AS(Quantity::parse("S()"), Error);
}

TEST_CASE("cq state and mixing formula") {
  const SubsystemLayout q{{"q", 2}};
  Rng rng(9);
  const auto r = random_density_matrix(q, 2, rng);
  const auto single = cq_state(Ensemble(RealVector::Ones(1), {r}));
  CHECK(single.layout().labels() == std::vector<std::string>{"q", "x"});
  CHECK(max_abs(single.matrix() - r.matrix()) < 1e-15);

  const Ensemble orth(RealVector::Constant(2, 0.5),
                      {LabeledState(q, mat2(1, 0, 0, 0)), LabeledState(q, mat2(0, 0, 0, 1))});
  const auto cq = cq_state(orth);
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK(max_abs(cq.matrix() - expect) < 1e-15);

  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.below(3);
    const auto w = random_distribution(n, rng);
    std::vector<LabeledState> states;
    double avg = 0;
    for (std::size_t k = 0; k < n; ++k) {
      states.push_back(random_density_matrix(SubsystemLayout{{"q", 3}}, 1 + rng.below(3), rng));
      avg += w(static_cast<Eigen::Index>(k)) * von_neumann_entropy(states.back());
    }
    const Ensemble e(w, states);
    CHECK(entropy_of(cq_state(e), {"q", "x"}) == doctest::Approx(shannon_entropy(w) + avg).epsilon(1e-9));
  }
}

TEST_CASE("holevo information") {
  const SubsystemLayout q{{"q", 2}};
  Rng rng(1);
  const auto r = random_density_matrix(q, 2, rng);
  CHECK(std::abs(holevo_information(Ensemble(RealVector::Constant(3, 1.0 / 3), {r, r, r}))) < 1e-12);

  RealVector w(2);
  w << 0.3, 0.7;
  const Ensemble orth(w, {LabeledState(q, mat2(1, 0, 0, 0)), LabeledState(q, mat2(0, 0, 0, 1))});
  CHECK(holevo_information(orth) == doctest::Approx(shannon_entropy(w)));

  const double s = 1 / std::sqrt(2.0);
  const Ensemble zp(RealVector::Constant(2, 0.5),
                    {LabeledState::from_ket(q, ket({1, 0})), LabeledState::from_ket(q, ket({s, s}))});
  const auto [lo, hi] = eig2(zp.average().matrix());
  CHECK(lo == doctest::Approx((1 - s) / 2));
  CHECK(hi == doctest::Approx((1 + s) / 2));
  CHECK(holevo_information(zp) == doctest::Approx(xlogx_sum({lo, hi})).epsilon(1e-12));
  CHECK(holevo_information(zp) == doctest::Approx(0.4165).epsilon(1e-4));

  CHECK_THROWS_AS(Ensemble(RealVector::Constant(2, 0.4), {r, r}), Error);
}

TEST_CASE("unit conversion") {
  CHECK(nats_to_bits(0.0) == 0.0);
  CHECK(nats_to_bits(kLn2) == doctest::Approx(1.0));
  CHECK(nats_to_bits(0.6931) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("entropy properties on random states") {
  Rng rng(123);
  const SubsystemLayout abc{{"a", 2}, {"b", 2}, {"c", 2}};
  for (int t = 0; t < 200; ++t) {
    const auto rho = random_density_matrix(abc, 1 + rng.below(8), rng);
    CHECK(quantum_entropy(Quantity::mutual({"a"}, {"b"}), rho) >= -1e-9);
    CHECK(quantum_entropy(Quantity::conditional_mutual({"a"}, {"b"}, {"c"}), rho) >= -1e-9);
    CHECK(von_neumann_entropy(rho) <= std::log(8.0) + 1e-9);
  }
}

}
