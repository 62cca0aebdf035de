#include <doctest.h>

#include "helpers.hpp"
#include "qbnets/randgen.hpp"
#include "qbnets/tensor.hpp"

using namespace qbnets;
using namespace testing;

TEST_SUITE("tensor") {

TEST_CASE("layout lookup and errors") {
  SubsystemLayout l{{"a", 2}, {"b", 3}};
  CHECK(l.total_dim() == 6);
  CHECK(l.index_of("b") == 1);
  CHECK_THROWS_AS(l.index_of("z"), Error);
  try {
    l.index_of("z");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownLabel);
  }
  CHECK_THROWS_AS((SubsystemLayout{{"a", 2}, {"a", 2}}), Error);
  CHECK(unflatten(l, 5) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("state validation") {
  SubsystemLayout l{{"a", 2}};
  CHECK_NOTHROW(LabeledState(l, ComplexMatrix::Identity(2, 2) / 2.0));
  CHECK_THROWS_AS(LabeledState(l, ComplexMatrix::Identity(2, 2)), Error);
  CHECK_THROWS_AS(LabeledState(l, mat2(1.5, 0, 0, -0.5)), Error);
  CHECK_THROWS_AS(LabeledState(l, mat2(0.5, 0.3, 0.1, 0.5)), Error);
  const auto d = diagnose_state(mat2(1.5, 0, 0, -0.5));
  CHECK(d.min_eigenvalue == doctest::Approx(-0.5));
  CHECK(d.max_deviation() == doctest::Approx(0.5));
}

TEST_CASE("kron examples") {
  CHECK(max_abs(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) -
                ComplexMatrix::Identity(4, 4)) == 0.0);
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(1, 1) = 1;
  CHECK(max_abs(kron(mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)) - expect) == 0.0);

  Rng rng(11);
  const auto a = random_gaussian_matrix(2, 2, rng);
  const auto b = random_gaussian_matrix(3, 3, rng);
  const auto k = kron(a, b);
  double worst = 0;
  for (int ia = 0; ia < 2; ++ia)
    for (int ja = 0; ja < 2; ++ja)
      for (int ib = 0; ib < 3; ++ib)
        for (int jb = 0; jb < 3; ++jb) worst = std::max(worst, std::abs(k(ia * 3 + ib, ja * 3 + jb) - a(ia, ja) * b(ib, jb)));
  CHECK(worst < 1e-15);
}

TEST_CASE("partial trace") {
  const SubsystemLayout ab{{"a", 2}, {"b", 2}};
  const auto bell_rho = LabeledState::from_ket(ab, bell());
  CHECK(max_abs(partial_trace(bell_rho, {"a"}).matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);

  Rng rng(3);
  const auto ra = random_density_matrix(SubsystemLayout{{"a", 2}}, 2, rng);
  const auto rb = random_density_matrix(SubsystemLayout{{"b", 3}}, 3, rng);
  const auto prod = LabeledState(SubsystemLayout{{"a", 2}, {"b", 3}}, kron(ra.matrix(), rb.matrix()));
  CHECK(max_abs(partial_trace(prod, {"a"}).matrix() - ra.matrix()) < 1e-12);
  CHECK(max_abs(partial_trace(prod, {"b"}).matrix() - rb.matrix()) < 1e-12);

  // Index-sum oracle on 2x3, tracing the dim-3 factor.
  const auto rho = random_density_matrix(SubsystemLayout{{"a", 2}, {"b", 3}}, 6, rng);
  ComplexMatrix oracle = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k) oracle(i, j) += rho.matrix()(i * 3 + k, j * 3 + k);
  CHECK(max_abs(partial_trace(rho, {"a"}).matrix() - oracle) < 1e-14);

  ComplexMatrix oracle_b = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k) oracle_b(i, j) += rho.matrix()(k * 3 + i, k * 3 + j);
  CHECK(max_abs(partial_trace(rho, {"b"}).matrix() - oracle_b) < 1e-14);

  CHECK_THROWS_AS(partial_trace(rho, {"c"}), Error);
}

TEST_CASE("partial trace chain consistency") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto rho = random_density_matrix(SubsystemLayout{{"a", 2}, {"b", 3}, {"c", 2}}, 4, rng);
    const auto two_step = partial_trace(partial_trace(rho, {"a", "c"}), {"c"});
    const auto direct = partial_trace(rho, {"c"});
    CHECK(max_abs(two_step.matrix() - direct.matrix()) < 1e-12);
    CHECK(std::abs(direct.matrix().trace() - 1.0) < 1e-10);
  }
}

TEST_CASE("permute subsystems") {
  Rng rng(4);
  const auto ra = random_density_matrix(SubsystemLayout{{"a", 2}}, 2, rng);
  const auto rb = random_density_matrix(SubsystemLayout{{"b", 3}}, 3, rng);
  const auto prod = LabeledState(SubsystemLayout{{"a", 2}, {"b", 3}}, kron(ra.matrix(), rb.matrix()));
  const auto swapped = permute_subsystems(prod, {"b", "a"});
  CHECK(swapped.layout().labels() == std::vector<std::string>{"b", "a"});
  CHECK(max_abs(swapped.matrix() - kron(rb.matrix(), ra.matrix())) < 1e-15);
}

TEST_CASE("hermitian eigendecomposition") {
  auto e = eig_hermitian(mat2(0.3, 0, 0, 0.7));
  CHECK(e.values(0) == doctest::Approx(0.3));
  CHECK(e.values(1) == doctest::Approx(0.7));
  e = eig_hermitian(mat2(0, 1, 1, 0));
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));

  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_gaussian_matrix(4, 4, rng);
    const ComplexMatrix h = g + g.adjoint();
    const auto d = eig_hermitian(h);
    const ComplexMatrix rec = d.vectors * d.values.cast<Complex>().asDiagonal() * d.vectors.adjoint();
    CHECK(max_abs(rec - h) < 1e-9);
    for (int i = 1; i < 4; ++i) CHECK(d.values(i - 1) <= d.values(i));
  }
}

TEST_CASE("support log") {
  CHECK(max_abs(support_log(ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0)) +
                kLn2 * ComplexMatrix::Identity(2, 2)) < 1e-12);
  CHECK(max_abs(support_log(mat2(1, 0, 0, 0))) < 1e-12);
  const auto l = support_log(mat2(0.25, 0, 0, 0.75));
  CHECK(l(0, 0).real() == doctest::Approx(std::log(0.25)));
  CHECK(l(1, 1).real() == doctest::Approx(std::log(0.75)));
  CHECK(std::abs(l(0, 1)) < 1e-14);
}

TEST_CASE("hermitian exp inverts support log on full rank") {
  Rng rng(2);
  const auto rho = random_density_matrix(SubsystemLayout{{"a", 3}}, 3, rng);
  CHECK(max_abs(hermitian_exp(support_log(rho)) - rho.matrix()) < 1e-10);
}

TEST_CASE("lift operator matches kron") {
  Rng rng(9);
  const SubsystemLayout l{{"a", 2}, {"b", 3}};
  const auto op = random_gaussian_matrix(2, 2, rng);
  CHECK(max_abs(lift_operator(l, "a", op) - kron(op, ComplexMatrix::Identity(3, 3))) < 1e-15);
  const auto opb = random_gaussian_matrix(3, 3, rng);
  CHECK(max_abs(lift_operator(l, "b", opb) - kron(ComplexMatrix::Identity(2, 2), opb)) < 1e-15);
}

TEST_CASE("trace distance") {
  CHECK(trace_distance(mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)) == doctest::Approx(1.0));
  CHECK(trace_distance(mat2(0.5, 0, 0, 0.5), mat2(0.5, 0, 0, 0.5)) == doctest::Approx(0.0));
}

}
