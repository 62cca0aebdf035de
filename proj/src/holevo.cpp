#include "qbnets/holevo.hpp"

#include <cmath>

namespace qbnets {

namespace {

ComplexVector basis_ket(std::size_t dim, std::size_t k) {
  return ComplexVector::Unit(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(k));
}

// Nodes x, Q and q (labeled `q_label`) of the purification.
std::vector<Node> purification_nodes(const Ensemble& e, bool classical_x, const std::string& q_label,
                                     Marking q_marking, Marking big_q_marking) {
  const auto nx = static_cast<Eigen::Index>(e.size());
  const auto nq = static_cast<Eigen::Index>(e.layout().total_dim());

  ComplexVector root(nx);
  for (Eigen::Index x = 0; x < nx; ++x) root(x) = std::sqrt(std::max(0.0, e.weights()(x)));

  ComplexMatrix a_big_q(nq, nx);
  ComplexMatrix a_q(nq, nq * nx);  // columns: Q * nx + x
  for (Eigen::Index x = 0; x < nx; ++x) {
    const auto eig = eig_hermitian(e.states()[static_cast<std::size_t>(x)].matrix());
    for (Eigen::Index big_q = 0; big_q < nq; ++big_q) {
      a_big_q(big_q, x) = std::sqrt(std::max(0.0, eig.values(big_q)));
      a_q.col(big_q * nx + x) = eig.vectors.col(big_q);
    }
  }
  return {Node::root("x", root, classical_x ? Marking::Classical : Marking::Visible),
          Node::child("Q", {"x"}, a_big_q, big_q_marking),
          Node::child(q_label, {"Q", "x"}, a_q, q_marking)};
}

}  // namespace

QBNet purification_net(const Ensemble& e, bool classical_x) {
  return QBNet(purification_nodes(e, classical_x, "q", Marking::Visible, Marking::Visible));
}

LabeledState build_purification(const Ensemble& e, bool classical_x) {
  return permute_subsystems(compile_density(purification_net(e, classical_x)), {"q", "Q", "x"});
}

QBNet measurement_net(const HolevoInstance& inst) {
  const auto& c = inst.channel;
  const std::size_t nq = inst.ensemble.layout().total_dim();
  if (c.in_dim() != nq || c.out_dim() != nq) {
    throw Error(ErrorKind::DimensionMismatch, "measurement channel must act on q (dim " + std::to_string(nq) + ")");
  }
  const std::size_t ny = c.kraus().size();
  auto nodes = purification_nodes(inst.ensemble, true, "q1", Marking::Slashed, Marking::Traced);
  nodes.push_back(Node::root("y1", basis_ket(ny, 0), Marking::Slashed));
  Node out = Node::child("qy2", {"q1", "y1"}, stinespring_dilation(c));
  out.parts = {{"q2", nq, Marking::Visible}, {"y2", ny, Marking::Visible}};
  nodes.push_back(std::move(out));
  return QBNet(std::move(nodes));
}

LabeledState measured_state(const HolevoInstance& inst) {
  return permute_subsystems(compile_density(measurement_net(inst)), {"q2", "y2", "x"});
}

double measured_information(const Ensemble& e, const KrausChannel& measurement) {
  const auto r = measured_state({e, measurement});
  return quantum_entropy(Quantity::mutual({"y2"}, {"x"}), r);
}

KrausChannel sampled_measurement(std::size_t dim, Seed seed, std::size_t s) {
  if (s == 0) return KrausChannel::dephasing(dim);
  Rng rng(derive_seed(seed, s));
  return KrausChannel::projective(random_unitary(dim, rng));
}

AccessibleInfo accessible_info_lower_bound(const Ensemble& e, std::size_t samples, Seed seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  const std::size_t dim = e.layout().total_dim();
  AccessibleInfo out;
  out.per_sample.reserve(samples + 1);
  for (std::size_t s = 0; s <= samples; ++s) {
    auto channel = sampled_measurement(dim, seed, s);
    const double value = measured_information(e, channel);
    out.per_sample.push_back(value);
    if (s == 0 || value > out.best) {
      out.best = value;
      out.best_index = s;
      out.best_channel = std::move(channel);
    }
  }
  return out;
}

HolevoBoundReport check_holevo_bound(const Ensemble& e, std::size_t samples, Seed seed) {
  HolevoBoundReport report;
  report.holevo = holevo_information(e);
  report.accessible = accessible_info_lower_bound(e, samples, seed);
  for (double v : report.accessible.per_sample) {
    if (v > report.holevo + kCheckTolerance) ++report.violations;
  }
  report.verdict = verdict_leq("holevo_bound", "S(y2:x_cl) <= Hol", report.accessible.best, report.holevo);
  report.verdict.holds = report.verdict.holds && report.violations == 0;
  report.verdict.seed = seed;
  report.verdict.dims = {e.layout().total_dim(), e.size()};
  return report;
}

}  // namespace qbnets
