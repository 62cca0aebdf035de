#include <doctest.h>

#include "helpers.hpp"
#include "qbnets/channels.hpp"
#include "qbnets/entropy.hpp"
#include "qbnets/netmodel.hpp"
#include "qbnets/purestate.hpp"
#include "qbnets/randgen.hpp"

using namespace qbnets;
using namespace testing;

namespace {

ComplexMatrix delta(std::size_t n) { return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)); }

ComplexVector uniform_ket(std::size_t n) {
  return ComplexVector::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(static_cast<double>(n)));
}

}  // namespace

TEST_SUITE("netmodel") {

TEST_CASE("single root compiles to its projector") {
  const QBNet net({Node::root("a", uniform_ket(2))});
  const auto rho = compile_density(net);
  CHECK(rho.layout().labels() == std::vector<std::string>{"a"});
  CHECK(max_abs(rho.matrix() - ComplexMatrix::Constant(2, 2, 0.5)) < 1e-15);
}

TEST_CASE("copy chain gives the maximally entangled state") {
  const QBNet net({Node::root("a", uniform_ket(2)), Node::child("a2", {"a"}, delta(2))});
  const auto rho = compile_density(net);
  const auto expect = LabeledState::from_ket(SubsystemLayout{{"a", 2}, {"a2", 2}}, bell());
  CHECK(max_abs(rho.matrix() - expect.matrix()) < 1e-15);
  CHECK(entropy_of(rho, {"a"}) == doctest::Approx(kLn2));
  CHECK(entropy_of(rho, {"a", "a2"}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fan-out net matches nested-loop amplitude sum") {
  for (Seed seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const auto ae = random_ket(2, rng);
    const auto aa = random_amplitude_table(2, 2, rng);
    const auto ab = random_amplitude_table(2, 2, rng);

    // e traced, a and b visible.
    const QBNet net({Node::root("e", ae, Marking::Traced), Node::child("a", {"e"}, aa),
                     Node::child("b", {"e"}, ab)});
    const auto rho = compile_density(net);
    ComplexMatrix oracle = ComplexMatrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int e = 0; e < 2; ++e)
              oracle(a * 2 + b, a2 * 2 + b2) +=
                  ae(e) * aa(a, e) * ab(b, e) * std::conj(ae(e) * aa(a2, e) * ab(b2, e));
    CHECK(max_abs(rho.matrix() - oracle) < 1e-13);

    // e slashed: coherent sum, renormalized.
    const auto slashed = compile_density(net.with_marking("e", Marking::Slashed), {.renormalize = true});
    ComplexVector psi = ComplexVector::Zero(4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int e = 0; e < 2; ++e) psi(a * 2 + b) += ae(e) * aa(a, e) * ab(b, e);
    psi.normalize();
    CHECK(max_abs(slashed.matrix() - psi * psi.adjoint()) < 1e-13);
  }
}

TEST_CASE("all-visible nets compile to pure states") {
  for (Seed seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const QBNet net({Node::root("a", random_ket(2, rng)), Node::child("b", {"a"}, random_amplitude_table(3, 2, rng)),
                     Node::child("c", {"a", "b"}, random_amplitude_table(2, 6, rng))});
    const auto rho = compile_density(net);
    CHECK(rho.layout().labels() == std::vector<std::string>{"a", "b", "c"});
    CHECK(is_pure(rho));
  }
}

TEST_CASE("net validation") {
  CHECK_THROWS_AS(QBNet({Node::root("a", ket({1, 1}))}), Error);
  CHECK_THROWS_AS(QBNet({Node::root("a", uniform_ket(2)), Node::child("b", {"z"}, delta(2))}), Error);
  CHECK_THROWS_AS(QBNet({Node::root("a", uniform_ket(2)), Node::child("b", {"a"}, delta(3))}), Error);
  CHECK_THROWS_AS(QBNet({Node::child("a", {"b"}, delta(2)), Node::child("b", {"a"}, delta(2))}), Error);
  // Non-isometric amplitudes break normalization unless renormalized.
  const QBNet lossy({Node::root("a", uniform_ket(2)),
                     Node::child("b", {"a"}, ComplexMatrix::Constant(2, 2, 1.0 / std::sqrt(2.0)), Marking::Slashed)});
  CHECK_THROWS_AS(compile_density(lossy), Error);
  CHECK_NOTHROW(compile_density(lossy, {.renormalize = true}));
}

TEST_CASE("classical marking dephases") {
  const QBNet net({Node::root("a", uniform_ket(2)), Node::child("a2", {"a"}, delta(2), Marking::Classical)});
  const auto rho = compile_density(net);
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK(max_abs(rho.matrix() - expect) < 1e-15);
}

TEST_CASE("classicize") {
  const SubsystemLayout ab{{"a", 2}, {"b", 2}};
  const LabeledState diag(ab, ComplexVector(ket({0.1, 0.2, 0.3, 0.4})).asDiagonal().toDenseMatrix());
  CHECK(max_abs(classicize(diag, "a").matrix() - diag.matrix()) == 0.0);

  const auto b = LabeledState::from_ket(ab, bell());
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK(max_abs(classicize(b, "a").matrix() - expect) < 1e-15);
  CHECK(max_abs(classicize(b, "b").matrix() - expect) < 1e-15);

  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density_matrix(ab, 4, rng);
    const auto both = classicize(classicize(rho, "a"), "b");
    const ComplexMatrix oracle = rho.matrix().diagonal().asDiagonal();
    CHECK(max_abs(both.matrix() - oracle) < 1e-15);
    const auto once = classicize(rho, "b");
    CHECK(max_abs(classicize(once, "b").matrix() - once.matrix()) == 0.0);
  }
  CHECK_THROWS_AS(classicize(b, "z"), Error);
}

TEST_CASE("chain nets") {
  Rng rng(5);
  ChainNetSpec spec;
  spec.root = random_ket(2, rng);
  spec.first_link = random_isometry(2, 2, rng);
  spec.links.push_back({2, 2, random_isometry(4, 2, rng)});
  spec.links.push_back({2, 2, random_isometry(4, 2, rng)});

  const auto rho0 = compile_density(build_chain_net(spec, 0));
  CHECK(rho0.layout().labels() == std::vector<std::string>{"a", "b"});
  ComplexVector psi(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) psi(a * 2 + b) = spec.root(a) * spec.first_link(b, a);
  CHECK(max_abs(rho0.matrix() - psi * psi.adjoint()) < 1e-14);

  SUBCASE("trivial environment link") {
    ChainNetSpec s = spec;
    s.links = {{2, 1, delta(2)}};
    const auto rho1 = compile_density(build_chain_net(s, 1, {true}));
    CHECK(rho1.layout().labels() == std::vector<std::string>{"a", "b1"});
    CHECK(max_abs(rho1.matrix() - rho0.matrix()) < 1e-14);
  }

  SUBCASE("j = 2 equals sequential channel application") {
    const auto rho2 = compile_density(build_chain_net(spec, 2, {true, true}));
    CHECK(rho2.layout().labels() == std::vector<std::string>{"a", "b2"});
    auto seq = apply_channel(induced_channel(spec.links[0]), rho0, "b");
    seq = apply_channel(induced_channel(spec.links[1]), seq, "b");
    CHECK(max_abs(rho2.matrix() - seq.matrix()) < 1e-12);

    const auto full = compile_density(build_chain_net(spec, 2));
    CHECK(full.layout().labels() == std::vector<std::string>{"a", "b", "b1", "b2"});
  }

  SUBCASE("induced channels are valid") {
    for (const auto& l : spec.links) CHECK(validate_channel(induced_channel(l)).valid);
  }

  CHECK_THROWS_AS(build_chain_net(spec, 3), Error);
}

TEST_CASE("erase versus trace") {
  SUBCASE("copy node") {
    const QBNet net({Node::root("a", uniform_ket(2)), Node::child("a2", {"a"}, delta(2))});
    const auto p = erase_vs_trace(net, "a2");
    CHECK(is_pure(p.erased));
    CHECK(von_neumann_entropy(p.traced) == doctest::Approx(kLn2));
  }
  SUBCASE("scalar node") {
    const QBNet net({Node::root("a", ket({0.6, 0.8})), Node::child("s", {"a"}, ComplexMatrix::Ones(1, 2))});
    const auto p = erase_vs_trace(net, "s");
    CHECK(max_abs(p.erased.matrix() - p.traced.matrix()) < 1e-14);
  }
  SUBCASE("constant amplitudes") {
    // ψ(a,b) = 1/2 for all a, b is the product |+⟩|+⟩, so both routes give
    // the pure |+⟩⟨+| on a.
    const QBNet net({Node::root("a", uniform_ket(2)),
                     Node::child("b", {"a"}, ComplexMatrix::Constant(2, 2, 1.0 / std::sqrt(2.0)))});
    const auto p = erase_vs_trace(net, "b");
    const ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
    CHECK(max_abs(p.erased.matrix() - plus) < 1e-14);
    CHECK(max_abs(p.traced.matrix() - plus) < 1e-14);
  }
  SUBCASE("errors") {
    const QBNet net({Node::root("a", uniform_ket(2)), Node::child("b", {"a"}, delta(2))});
    CHECK_THROWS_AS(erase_vs_trace(net, "a"), Error);
    CHECK_THROWS_AS(erase_vs_trace(net, "q"), Error);
  }
}

TEST_CASE("marking names round-trip") {
  for (auto m : {Marking::Visible, Marking::Slashed, Marking::Traced, Marking::Classical}) {
    CHECK(parse_marking(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_marking("hidden"), Error);
}

}
