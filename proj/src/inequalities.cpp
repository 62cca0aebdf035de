#include "qbnets/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qbnets/holevo.hpp"
#include "qbnets/purestate.hpp"

namespace qbnets {

namespace {

using Labels = std::vector<std::string>;

const std::vector<InequalityInfo> kRegistry = {
    {InequalityId::MiNonneg, "mi_nonneg", false, "S(a,b) <= S(a)+S(b)", "state"},
    {InequalityId::CmiNonneg, "cmi_nonneg", false, "S(b:a|e) >= 0", "state"},
    {InequalityId::ArakiLieb, "araki_lieb", false, "|S(a)-S(b)| <= S(a,b)", "state"},
    {InequalityId::CondBounds, "cond_bounds", false, "-S(b) <= S(b|a) <= S(b)", "state"},
    {InequalityId::UnitalMonotone, "unital_monotone", false, "S(rho) <= S(T(rho))", "channel+state"},
    {InequalityId::FunctionDecrease, "function_decrease", false, "H(f(x)) <= H(x)", "stochastic"},
    {InequalityId::EntropyMeasurement, "entropy_measurement", false, "S(rho) <= H{<x|rho|x>}", "state"},
    {InequalityId::EntropyPreparation, "entropy_preparation", false, "S(rho_x) <= H{w}", "ensemble"},
    {InequalityId::DpClassical, "dp_classical", false, "H(c:a) <= H(b:a)", "classical chain"},
    {InequalityId::DpFunction, "dp_function", false, "H(f(x):a) <= H(x:a), H(b:x) <= H(b:f(x))",
     "classical chain"},
    {InequalityId::DpSingleGraph, "dp_single_graph", false, "S(b2_cl:a) <= S(b1_cl:a) <= S(b_cl:a)", "chain net"},
    {InequalityId::DpMultigraph, "dp_multigraph", false, "S(b3:a) <= S(b2:a) <= S(b1:a)", "chain net"},
    {InequalityId::CondOnClassical, "cond_on_classical", false, "max(0,S(b|a)) <= S(b|a_cl)", "state"},
    {InequalityId::CloneMerge, "clone_merge", true, "S(b,a,a') = S(b,a)", "ensemble"},
    {InequalityId::TrinodeCmiZero, "trinode_cmi_zero", true, "S(a:b|e_cl) = 0", "net"},
    {InequalityId::IsometryTrace, "isometry_trace", true, "S(b,a) = S(b_cl,a)", "isometry chain"},
    {InequalityId::HolevoIsMi, "holevo_is_mi", true, "Hol = S(q:x_cl)", "ensemble"},
    {InequalityId::MreClassical, "mre_classical", false, "D(Tp//Tq) <= D(p//q)", "stochastic+p+q"},
    {InequalityId::MreQuantum, "mre_quantum", false, "D(T(rho)//T(sigma)) <= D(rho//sigma)", "channel+rho+sigma"},
    {InequalityId::HolevoBound, "holevo_bound", false, "S(y2:x_cl) <= Hol", "ensemble+samples"},
};

template <typename T>
const T& expect(InequalityId id, const Instance& instance) {
  if (const auto* p = std::get_if<T>(&instance)) return *p;
  throw Error(ErrorKind::ShapeMismatch,
              std::string(to_string(id)) + " expects a " + std::string(info(id).instance) + " instance");
}

std::vector<std::size_t> dims_of(const SubsystemLayout& layout) {
  std::vector<std::size_t> out;
  for (const auto& p : layout.parts()) out.push_back(p.dim);
  return out;
}

const std::string& part_label(InequalityId id, const LabeledState& s, std::size_t k) {
  if (s.layout().size() <= k) {
    throw Error(ErrorKind::ShapeMismatch,
                std::string(to_string(id)) + " needs at least " + std::to_string(k + 1) + " subsystems");
  }
  return s.layout().parts()[k].label;
}

double S(const LabeledState& s, const Labels& labels) { return entropy_of(s, labels); }
double H(const JointDist& p, const Labels& labels) { return entropy_of(p, labels); }

double mutual(const LabeledState& s, const Labels& y, const Labels& x) {
  return quantum_entropy(Quantity::mutual(y, x), s);
}
double mutual(const JointDist& p, const Labels& y, const Labels& x) {
  return classical_entropy(Quantity::mutual(y, x), p);
}

std::string join(const Labels& labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : ",") + l;
  return out;
}

CheckVerdict tagged(CheckVerdict v, const std::vector<std::size_t>& dims) {
  v.dims = dims;
  return v;
}

bool is_deterministic(const RealMatrix& t) {
  if (!is_column_stochastic(t)) return false;
  return (t.array() == 0.0 || t.array() == 1.0).all();
}

void require_distribution(const RealVector& p, std::string_view what) {
  if (p.size() == 0 || (p.array() < -kChannelTolerance).any() || std::abs(p.sum() - 1.0) > kChannelTolerance) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " is not a probability distribution");
  }
}

// Joint distribution of a classical chain over `labels`, root first.
JointDist chain_joint(const Labels& labels, const RealVector& root, const std::vector<RealMatrix>& links) {
  require_distribution(root, "chain root");
  std::vector<Subsystem> parts{{labels[0], static_cast<std::size_t>(root.size())}};
  RealVector joint = root;
  for (std::size_t k = 0; k < links.size(); ++k) {
    const auto& t = links[k];
    if (!is_column_stochastic(t)) {
      throw Error(ErrorKind::InvalidChannel, "chain link " + std::to_string(k + 1) + " is not column-stochastic");
    }
    const auto prev = static_cast<Eigen::Index>(parts.back().dim);
    if (t.cols() != prev) throw Error(ErrorKind::DimensionMismatch, "chain link input dimension mismatch");
    RealVector next(joint.size() * t.rows());
    for (Eigen::Index i = 0; i < joint.size(); ++i) {
      const Eigen::Index x = i % prev;
      for (Eigen::Index y = 0; y < t.rows(); ++y) next(i * t.rows() + y) = joint(i) * t(y, x);
    }
    joint = std::move(next);
    parts.push_back({labels[k + 1], static_cast<std::size_t>(t.rows())});
  }
  return JointDist(SubsystemLayout(std::move(parts)), joint);
}

LabeledState merged(const LabeledState& s, const std::string& label) {
  return LabeledState::trusted(SubsystemLayout{{label, s.dim()}}, s.matrix());
}

// ---------------------------------------------------------------------------

std::vector<CheckVerdict> check_mi(const LabeledState& s) {
  const auto id = InequalityId::MiNonneg;
  const auto& b = part_label(id, s, 0);
  const auto& a = part_label(id, s, 1);
  return {verdict_leq("mi_nonneg", "S(" + a + "," + b + ")<=S(" + a + ")+S(" + b + ")", S(s, {a, b}),
                      S(s, {a}) + S(s, {b}))};
}

std::vector<CheckVerdict> check_cmi(const LabeledState& s) {
  const auto id = InequalityId::CmiNonneg;
  const auto& b = part_label(id, s, 0);
  const auto& a = part_label(id, s, 1);
  const auto& e = part_label(id, s, 2);
  const double cmi = quantum_entropy(Quantity::conditional_mutual({b}, {a}, {e}), s);
  return {verdict_leq("cmi_nonneg", "0<=S(" + b + ":" + a + "|" + e + ")", 0.0, cmi)};
}

std::vector<CheckVerdict> check_araki_lieb(const LabeledState& s) {
  const auto id = InequalityId::ArakiLieb;
  const auto& b = part_label(id, s, 0);
  const auto& a = part_label(id, s, 1);
  const double sa = S(s, {a}), sb = S(s, {b}), sab = S(s, {a, b});
  std::vector<CheckVerdict> out{
      verdict_leq("araki_lieb", "|S(" + a + ")-S(" + b + ")|<=S(" + a + "," + b + ")", std::abs(sa - sb), sab)};
  // Proof route: purify ρ_ab with e, then S(b,e) = S(a) and S(e) = S(a,b).
  const auto pure = purify(partial_trace(s, {b, a}), "e");
  out.push_back(verdict_eq("araki_lieb.purification", "S(" + b + ",e)=S(" + a + ")", S(pure, {b, "e"}), sa));
  out.push_back(verdict_eq("araki_lieb.purification", "S(e)=S(" + a + "," + b + ")", S(pure, {"e"}), sab));
  out.push_back(verdict_eq("araki_lieb.purification", "S(" + a + ",e)=S(" + b + ")", S(pure, {a, "e"}), sb));
  return out;
}

std::vector<CheckVerdict> check_cond_bounds(const LabeledState& s) {
  const auto id = InequalityId::CondBounds;
  const auto& b = part_label(id, s, 0);
  const auto& a = part_label(id, s, 1);
  const double sb = S(s, {b});
  const double cond = S(s, {a, b}) - S(s, {a});
  const std::string c = "S(" + b + "|" + a + ")";
  std::vector<CheckVerdict> out{verdict_leq("cond_bounds", "-S(" + b + ")<=" + c, -sb, cond),
                                verdict_leq("cond_bounds", c + "<=S(" + b + ")", cond, sb)};
  const auto p = diagonal_distribution(s);
  const double hb = H(p, {b});
  const double hcond = H(p, {a, b}) - H(p, {a});
  out.push_back(verdict_leq("cond_bounds.classical", "0<=H(" + b + "|" + a + ")", 0.0, hcond));
  out.push_back(verdict_leq("cond_bounds.classical", "H(" + b + "|" + a + ")<=H(" + b + ")", hcond, hb));
  return out;
}

std::vector<CheckVerdict> check_unital(const ChannelInstance& inst) {
  const auto& c = inst.channel;
  const auto v = validate_channel(c);
  if (!v.valid) throw Error(ErrorKind::InvalidChannel, "channel is not trace preserving");
  if (c.in_dim() != c.out_dim() || !is_unital(c)) {
    throw Error(ErrorKind::InvalidArgument, "unital_monotone needs a square unital channel");
  }
  const auto& target = part_label(InequalityId::UnitalMonotone, inst.state, 0);
  const auto out_state = apply_channel(c, inst.state, target);
  std::vector<CheckVerdict> out{
      verdict_leq("unital_monotone", "S(rho)<=S(T(rho))", von_neumann_entropy(inst.state),
                  von_neumann_entropy(out_state))};
  const RealMatrix t = induced_transition(c);
  const RealVector p = diagonal_distribution(partial_trace(inst.state, {target})).probabilities();
  out.push_back(verdict_leq("unital_monotone.classical", "H(p)<=H(Tp)", shannon_entropy(p), shannon_entropy(t * p)));
  return out;
}

std::vector<CheckVerdict> check_function(const StochasticInstance& inst) {
  if (!is_deterministic(inst.t)) {
    throw Error(ErrorKind::InvalidArgument, "function_decrease needs a deterministic 0/1 transition matrix");
  }
  require_distribution(inst.p, "p");
  const auto joint = joint_from_channel("y", "x", inst.t, inst.p);
  const double hy = H(joint, {"y"});
  return {verdict_leq("function_decrease", "H(f(x))<=H(x)", hy, H(joint, {"x"})),
          verdict_eq("function_decrease.information", "H(f(x):x)=H(f(x))", mutual(joint, {"y"}, {"x"}), hy)};
}

std::vector<CheckVerdict> check_measurement(const LabeledState& s) {
  std::vector<CheckVerdict> out{verdict_leq("entropy_measurement", "S(rho)<=H{<x|rho|x>}", von_neumann_entropy(s),
                                            shannon_entropy(diagonal_distribution(s).probabilities()))};
  if (s.layout().size() >= 2) {
    const auto& b = s.layout().parts()[0].label;
    const auto& a = s.layout().parts()[1].label;
    const auto ba = partial_trace(s, {b, a});
    const auto ba_cl = classicize(ba, a);
    out.push_back(verdict_leq("entropy_measurement", "S(" + b + "," + a + ")<=S(" + b + "," + a + "_cl)",
                              S(ba, {b, a}), S(ba_cl, {b, a})));
    out.push_back(verdict_leq("entropy_measurement", "S(" + b + ":" + a + "_cl)<=S(" + b + ":" + a + ")",
                              mutual(ba_cl, {b}, {a}), mutual(ba, {b}, {a})));
  }
  return out;
}

std::vector<CheckVerdict> check_preparation(const Ensemble& e) {
  std::vector<ComplexVector> kets;
  for (const auto& st : e.states()) {
    if (!is_pure(st)) throw Error(ErrorKind::InvalidState, "entropy_preparation needs pure ensemble states");
    kets.push_back(pure_ket(st));
  }
  const double s_avg = von_neumann_entropy(e.average());
  const double hw = shannon_entropy(e.weights());
  std::vector<CheckVerdict> out{verdict_leq("entropy_preparation", "S(rho_x)<=H{w}", s_avg, hw)};

  bool orthonormal = true;
  for (std::size_t i = 0; i < kets.size(); ++i) {
    for (std::size_t j = i + 1; j < kets.size(); ++j) {
      if (std::abs(kets[i].dot(kets[j])) >= 1e-10) orthonormal = false;
    }
  }
  if (orthonormal) out.push_back(verdict_eq("entropy_preparation.equality", "S(rho_x)=H{w}", s_avg, hw));

  // Net j → x with A(j)=√w_j and A(x|j)=ψ_j(x); its state on (j, x) is pure.
  const auto nj = static_cast<Eigen::Index>(kets.size());
  ComplexVector root(nj);
  ComplexMatrix amp(kets.front().size(), nj);
  for (Eigen::Index j = 0; j < nj; ++j) {
    root(j) = std::sqrt(std::max(0.0, e.weights()(j)));
    amp.col(j) = kets[static_cast<std::size_t>(j)];
  }
  const auto joint = compile_density(QBNet({Node::root("j", root), Node::child("x", {"j"}, amp)}));
  const double sj = S(joint, {"j"});
  out.push_back(verdict_eq("entropy_preparation.net", "S(x)=S(rho_x)", S(joint, {"x"}), s_avg));
  out.push_back(verdict_eq("entropy_preparation.net", "S(j)=S(x)", sj, S(joint, {"x"})));
  out.push_back(verdict_leq("entropy_preparation.net", "S(j)<=S(j_cl)", sj, S(classicize(joint, "j"), {"j"})));
  return out;
}

std::vector<CheckVerdict> check_dp_classical(const ClassicalChainInstance& inst) {
  if (inst.links.size() < 2) throw Error(ErrorKind::ShapeMismatch, "dp_classical needs at least 2 links");
  Labels labels{"a"};
  for (std::size_t k = 0; k < inst.links.size(); ++k) labels.push_back(std::string(1, static_cast<char>('b' + k)));
  const auto joint = chain_joint(labels, inst.root, inst.links);
  std::vector<CheckVerdict> out;
  for (std::size_t k = 1; k + 1 < labels.size(); ++k) {
    const auto& near = labels[k];
    const auto& far = labels[k + 1];
    out.push_back(verdict_leq("dp_classical", "H(" + far + ":a)<=H(" + near + ":a)", mutual(joint, {far}, {"a"}),
                              mutual(joint, {near}, {"a"})));
  }
  return out;
}

std::vector<CheckVerdict> check_dp_function(const ClassicalChainInstance& inst) {
  if (inst.links.size() != 3) throw Error(ErrorKind::ShapeMismatch, "dp_function needs links a->x->f(x)->b");
  if (!is_deterministic(inst.links[1])) {
    throw Error(ErrorKind::InvalidArgument, "dp_function: middle link must be deterministic");
  }
  const auto joint = chain_joint({"a", "x", "y", "b"}, inst.root, inst.links);
  return {verdict_leq("dp_function", "H(f(x):a)<=H(x:a)", mutual(joint, {"y"}, {"a"}), mutual(joint, {"x"}, {"a"})),
          verdict_leq("dp_function", "H(b:x)<=H(b:f(x))", mutual(joint, {"b"}, {"x"}), mutual(joint, {"b"}, {"y"}))};
}

std::vector<CheckVerdict> check_dp_single(const ChainNetSpec& spec) {
  if (spec.links.size() < 2) throw Error(ErrorKind::ShapeMismatch, "dp_single_graph needs at least 2 links");
  const auto rho = compile_density(build_chain_net(spec, 2));
  auto mi_cl = [&](const std::string& b) {
    return mutual(classicize(partial_trace(rho, {b, "a"}), b), {b}, {"a"});
  };
  const double m0 = mi_cl("b"), m1 = mi_cl("b1"), m2 = mi_cl("b2");
  std::vector<CheckVerdict> out{verdict_leq("dp_single_graph", "S(b2_cl:a)<=S(b1_cl:a)", m2, m1),
                                verdict_leq("dp_single_graph", "S(b1_cl:a)<=S(b_cl:a)", m1, m0)};
  const auto mid = classicize(classicize(partial_trace(rho, {"a", "b1", "b2"}), "b1"), "b2");
  out.push_back(verdict_eq("dp_single_graph.markov", "S(b2_cl:a|b1_cl)=0",
                           quantum_entropy(Quantity::conditional_mutual({"b2"}, {"a"}, {"b1"}), mid), 0.0));
  return out;
}

std::vector<CheckVerdict> check_dp_multi(const ChainNetSpec& spec) {
  if (spec.links.size() < 2) throw Error(ErrorKind::ShapeMismatch, "dp_multigraph needs at least 2 links");
  std::vector<double> mi;
  for (std::size_t j = 1; j <= spec.links.size(); ++j) {
    const auto rho = compile_density(build_chain_net(spec, j, std::vector<bool>(j, true)));
    const auto bj = chain_b_label(j);
    mi.push_back(mutual(partial_trace(rho, {bj, "a"}), {bj}, {"a"}));
  }
  std::vector<CheckVerdict> out;
  for (std::size_t j = 1; j < mi.size(); ++j) {
    out.push_back(verdict_leq("dp_multigraph",
                              "S(" + chain_b_label(j + 1) + ":a)<=S(" + chain_b_label(j) + ":a)", mi[j], mi[j - 1]));
  }
  return out;
}

std::vector<CheckVerdict> check_cond_classical(const LabeledState& s) {
  const auto id = InequalityId::CondOnClassical;
  const auto& b = part_label(id, s, 0);
  const auto& a = part_label(id, s, 1);
  const auto ba = partial_trace(s, {b, a});
  const auto ba_cl = classicize(ba, a);
  const double cond = S(ba, {b, a}) - S(ba, {a});
  const double cond_cl = S(ba_cl, {b, a}) - S(ba_cl, {a});
  const std::string c = "S(" + b + "|" + a + "_cl)";
  std::vector<CheckVerdict> out{verdict_leq("cond_on_classical", "0<=" + c, 0.0, cond_cl),
                                verdict_leq("cond_on_classical", "S(" + b + "|" + a + ")<=" + c, cond, cond_cl)};
  // Σ_a P(a) S(ρ_{b|a}) with ρ_{b|a} the normalized a-diagonal block.
  const auto nb = static_cast<Eigen::Index>(ba.layout().dim_of(b));
  const auto na = static_cast<Eigen::Index>(ba.layout().dim_of(a));
  double mixing = 0.0;
  for (Eigen::Index x = 0; x < na; ++x) {
    ComplexMatrix block(nb, nb);
    for (Eigen::Index r = 0; r < nb; ++r) {
      for (Eigen::Index k = 0; k < nb; ++k) block(r, k) = ba.matrix()(r * na + x, k * na + x);
    }
    const double p = block.trace().real();
    if (p > kProbabilityClip) mixing += p * spectral_entropy(block / p);
  }
  out.push_back(verdict_eq("cond_on_classical.mixing", c + "=sum_a P(a)S(rho_b|a)", cond_cl, mixing));
  return out;
}

std::vector<CheckVerdict> check_clone(const Ensemble& e) {
  const auto q_layout = e.layout();
  const Labels b = q_layout.labels();
  for (const auto& l : b) {
    if (l == "a" || l == "a'") throw Error(ErrorKind::InvalidArgument, "ensemble labels clash with a, a'");
  }
  const auto na = static_cast<Eigen::Index>(e.size());
  const auto nq = static_cast<Eigen::Index>(q_layout.total_dim());
  auto parts = q_layout.parts();
  parts.push_back({"a", e.size()});
  parts.push_back({"a'", e.size()});
  SubsystemLayout layout(std::move(parts));
  ComplexMatrix m = ComplexMatrix::Zero(nq * na * na, nq * na * na);
  for (Eigen::Index x = 0; x < na; ++x) {
    const auto& rho = e.states()[static_cast<std::size_t>(x)].matrix();
    const double w = e.weights()(x);
    for (Eigen::Index r = 0; r < nq; ++r) {
      for (Eigen::Index c = 0; c < nq; ++c) m((r * na + x) * na + x, (c * na + x) * na + x) = w * rho(r, c);
    }
  }
  const auto s = LabeledState::trusted(std::move(layout), std::move(m));
  auto with = [&](std::initializer_list<std::string> extra) {
    Labels out = b;
    out.insert(out.end(), extra);
    return out;
  };
  const std::string bn = join(b);
  const double s_baa = S(s, with({"a", "a'"}));
  const double s_ba = S(s, with({"a"}));
  const double s_bap = S(s, with({"a'"}));
  const double sa = S(s, {"a"}), sap = S(s, {"a'"});
  std::vector<CheckVerdict> out{
      verdict_eq("clone_merge", "S(" + bn + ",a,a')=S(" + bn + ",a)", s_baa, s_ba),
      verdict_eq("clone_merge", "S(" + bn + ",a,a')=S(" + bn + ",a')", s_baa, s_bap),
      verdict_eq("clone_merge", "S(" + bn + ",a|a')=S(" + bn + "|a)", s_baa - sap, s_ba - sa),
      verdict_eq("clone_merge", "S(" + bn + ",a|a')=S(" + bn + "|a')", s_baa - sap, s_bap - sap)};
  const auto p = diagonal_distribution(partial_trace(s, {"a", "a'"}));
  const double ha = H(p, {"a"});
  out.push_back(verdict_eq("clone_merge.classical", "H(a,a')=H(a)", H(p, {"a", "a'"}), ha));
  out.push_back(verdict_eq("clone_merge.classical", "H(a')=H(a)", H(p, {"a'"}), ha));
  out.push_back(verdict_eq("clone_merge.classical", "H(a|a')=0", H(p, {"a", "a'"}) - H(p, {"a'"}), 0.0));
  out.push_back(verdict_eq("clone_merge.classical", "H(a:a')=H(a)", mutual(p, {"a"}, {"a'"}), ha));
  return out;
}

std::vector<CheckVerdict> check_trinode(const QBNet& net) {
  const auto rho = compile_density(net);
  for (const char* l : {"a", "b", "e"}) {
    if (!rho.layout().contains(l)) {
      throw Error(ErrorKind::ShapeMismatch, std::string("trinode_cmi_zero needs visible node '") + l + "'");
    }
  }
  const auto abe = classicize(partial_trace(rho, {"a", "b", "e"}), "e");
  return {verdict_eq("trinode_cmi_zero", "S(a:b|e_cl)=0",
                     quantum_entropy(Quantity::conditional_mutual({"a"}, {"b"}, {"e"}), abe), 0.0)};
}

std::vector<CheckVerdict> check_isometry_trace(const IsometryTraceInstance& inst) {
  if (!is_isometry(inst.c_given_b)) throw Error(ErrorKind::InvalidArgument, "A(c|b) must be an isometry");
  auto net = [&](Marking b_marking) {
    return QBNet({Node::root("a", inst.root), Node::child("b", {"a"}, inst.b_given_a, b_marking),
                  Node::child("c", {"b"}, inst.c_given_b)});
  };
  const auto full = compile_density(net(Marking::Visible));
  const auto traced = permute_subsystems(partial_trace(full, {"b", "a"}), {"b", "a"});
  const auto two = compile_density(QBNet({Node::root("a", inst.root), Node::child("b", {"a"}, inst.b_given_a)}));
  const auto b_cl = permute_subsystems(classicize(two, "b"), {"b", "a"});
  std::vector<CheckVerdict> out{
      verdict_eq("isometry_trace", "S(b,a)=S(b_cl,a)", S(traced, {"b", "a"}), S(b_cl, {"b", "a"})),
      verdict_eq("isometry_trace.state", "tr_c rho = rho_{b_cl,a}", 0.0, max_abs(traced.matrix() - b_cl.matrix()))};
  if (is_isometry(inst.b_given_a)) {
    const auto slashed = partial_trace(compile_density(net(Marking::Slashed)), {"a"});
    out.push_back(verdict_eq("isometry_trace", "S(a)=S(a_cl)", S(slashed, {"a"}),
                             S(classicize(slashed, "a"), {"a"})));
  }
  return out;
}

std::vector<CheckVerdict> check_holevo_mi(const Ensemble& e) {
  const double hol = holevo_information(e);
  const auto cq = cq_state(e, "x");
  const Labels q = e.layout().labels();
  std::vector<CheckVerdict> out{verdict_eq("holevo_is_mi", "Hol=S(q:x_cl)", hol, mutual(cq, q, {"x"}))};
  const auto pur = partial_trace(build_purification(e, true), {"q", "x"});
  out.push_back(verdict_eq("holevo_is_mi.purification", "Hol=S(q:x_cl) via purification", hol,
                           mutual(pur, {"q"}, {"x"})));
  return out;
}

}  // namespace

const std::vector<InequalityInfo>& inequality_registry() { return kRegistry; }

const InequalityInfo& info(InequalityId id) {
  for (const auto& entry : kRegistry) {
    if (entry.id == id) return entry;
  }
  throw Error(ErrorKind::InvalidArgument, "unregistered inequality id");
}

std::string_view to_string(InequalityId id) { return info(id).name; }

InequalityId parse_inequality_id(std::string_view name) {
  for (const auto& entry : kRegistry) {
    if (entry.name == name) return entry.id;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown inequality id '" + std::string(name) + "'");
}

CheckVerdict check_mre_classical(const RealMatrix& t, const RealVector& p, const RealVector& q) {
  if (!is_column_stochastic(t)) throw Error(ErrorKind::InvalidChannel, "transition matrix is not column-stochastic");
  if (p.size() != t.cols() || q.size() != t.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "p and q must match the input dimension of t");
  }
  require_distribution(p, "p");
  require_distribution(q, "q");
  auto v = verdict_leq("mre_classical", "D(Tp//Tq)<=D(p//q)", classical_relative_entropy(t * p, t * q),
                       classical_relative_entropy(p, q));
  v.dims = {static_cast<std::size_t>(t.rows()), static_cast<std::size_t>(t.cols())};
  return v;
}

CheckVerdict check_mre_quantum(const KrausChannel& c, const LabeledState& rho, const LabeledState& sigma) {
  const auto validity = validate_channel(c);
  if (!validity.valid) throw Error(ErrorKind::InvalidChannel, "channel is not trace preserving");
  if (rho.layout() != sigma.layout()) throw Error(ErrorKind::ShapeMismatch, "rho and sigma layouts differ");
  if (rho.dim() != c.in_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "channel input dimension " + std::to_string(c.in_dim()) +
                                                  " does not match state dimension " + std::to_string(rho.dim()));
  }
  const auto r = merged(rho, "q"), s = merged(sigma, "q");
  const double before = quantum_relative_entropy(r, s);
  const double after = quantum_relative_entropy(apply_channel(c, r, "q"), apply_channel(c, s, "q"));
  auto v = verdict_leq("mre_quantum", "D(T(rho)//T(sigma))<=D(rho//sigma)", after, before);
  v.dims = {c.in_dim(), c.out_dim()};
  return v;
}

std::vector<CheckVerdict> check_entropic_all(InequalityId id, const Instance& inst) {
  std::vector<CheckVerdict> out;
  std::vector<std::size_t> dims;
  switch (id) {
    case InequalityId::MiNonneg: out = check_mi(expect<LabeledState>(id, inst)); break;
    case InequalityId::CmiNonneg: out = check_cmi(expect<LabeledState>(id, inst)); break;
    case InequalityId::ArakiLieb: out = check_araki_lieb(expect<LabeledState>(id, inst)); break;
    case InequalityId::CondBounds: out = check_cond_bounds(expect<LabeledState>(id, inst)); break;
    case InequalityId::EntropyMeasurement: out = check_measurement(expect<LabeledState>(id, inst)); break;
    case InequalityId::CondOnClassical: out = check_cond_classical(expect<LabeledState>(id, inst)); break;
    case InequalityId::UnitalMonotone: out = check_unital(expect<ChannelInstance>(id, inst)); break;
    case InequalityId::FunctionDecrease: out = check_function(expect<StochasticInstance>(id, inst)); break;
    case InequalityId::EntropyPreparation: out = check_preparation(expect<Ensemble>(id, inst)); break;
    case InequalityId::DpClassical: out = check_dp_classical(expect<ClassicalChainInstance>(id, inst)); break;
    case InequalityId::DpFunction: out = check_dp_function(expect<ClassicalChainInstance>(id, inst)); break;
    case InequalityId::DpSingleGraph: out = check_dp_single(expect<ChainNetSpec>(id, inst)); break;
    case InequalityId::DpMultigraph: out = check_dp_multi(expect<ChainNetSpec>(id, inst)); break;
    case InequalityId::CloneMerge: out = check_clone(expect<Ensemble>(id, inst)); break;
    case InequalityId::TrinodeCmiZero: out = check_trinode(expect<QBNet>(id, inst)); break;
    case InequalityId::IsometryTrace: out = check_isometry_trace(expect<IsometryTraceInstance>(id, inst)); break;
    case InequalityId::HolevoIsMi: out = check_holevo_mi(expect<Ensemble>(id, inst)); break;
    case InequalityId::MreClassical: {
      const auto& m = expect<MreClassicalInstance>(id, inst);
      return {check_mre_classical(m.t, m.p, m.q)};
    }
    case InequalityId::MreQuantum: {
      const auto& m = expect<MreQuantumInstance>(id, inst);
      return {check_mre_quantum(m.channel, m.rho, m.sigma)};
    }
    case InequalityId::HolevoBound: {
      const auto& m = expect<HolevoBoundInstance>(id, inst);
      return {check_holevo_bound(m.ensemble, m.samples, m.seed).verdict};
    }
  }
  if (const auto* s = std::get_if<LabeledState>(&inst)) dims = dims_of(s->layout());
  else if (const auto* c = std::get_if<ChannelInstance>(&inst)) dims = dims_of(c->state.layout());
  else if (const auto* e = std::get_if<Ensemble>(&inst)) dims = {e->layout().total_dim(), e->size()};
  else if (const auto* t = std::get_if<StochasticInstance>(&inst))
    dims = {static_cast<std::size_t>(t->t.rows()), static_cast<std::size_t>(t->t.cols())};
  else if (const auto* ch = std::get_if<ClassicalChainInstance>(&inst)) {
    dims = {static_cast<std::size_t>(ch->root.size())};
    for (const auto& l : ch->links) dims.push_back(static_cast<std::size_t>(l.rows()));
  } else if (const auto* cs = std::get_if<ChainNetSpec>(&inst)) {
    dims = {static_cast<std::size_t>(cs->root.size()), static_cast<std::size_t>(cs->first_link.rows())};
    for (const auto& l : cs->links) dims.push_back(l.b_dim);
  } else if (const auto* it = std::get_if<IsometryTraceInstance>(&inst)) {
    dims = {static_cast<std::size_t>(it->root.size()), static_cast<std::size_t>(it->b_given_a.rows()),
            static_cast<std::size_t>(it->c_given_b.rows())};
  } else if (const auto* n = std::get_if<QBNet>(&inst)) {
    for (const char* l : {"a", "b", "e"}) dims.push_back(n->node(l).state_count);
  }
  for (auto& v : out) v = tagged(std::move(v), dims);
  return out;
}

CheckVerdict check_entropic(InequalityId id, const Instance& instance) {
  const auto all = check_entropic_all(id, instance);
  const bool all_hold = std::all_of(all.begin(), all.end(), [](const auto& v) { return v.holds; });
  if (!all_hold) return binding_verdict(all);
  const std::string name(to_string(id));
  std::vector<CheckVerdict> own;
  std::copy_if(all.begin(), all.end(), std::back_inserter(own), [&](const auto& v) { return v.id == name; });
  return binding_verdict(own.empty() ? all : own);
}

// ---------------------------------------------------------------------------

namespace {

std::size_t dim_at(const std::vector<std::size_t>& dims, std::size_t k) {
  const std::size_t d = k < dims.size() ? dims[k] : 2;
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimensions must be >= 1");
  return d;
}

LabeledState random_mixed(const SubsystemLayout& layout, Rng& rng) {
  return random_density_matrix(layout, rng.below(layout.total_dim()) + 1, rng);
}

Ensemble random_ensemble(std::size_t dim, std::size_t count, Rng& rng, const std::string& label) {
  std::vector<LabeledState> states;
  const SubsystemLayout layout{{label, dim}};
  const RealVector w = random_distribution(count, rng);
  for (std::size_t x = 0; x < count; ++x) states.push_back(random_mixed(layout, rng));
  return Ensemble(w, std::move(states));
}

ChainNetSpec random_chain_spec(const std::vector<std::size_t>& dims, std::size_t links, Rng& rng) {
  ChainNetSpec spec;
  const std::size_t da = dim_at(dims, 0);
  const std::size_t db = std::max(dim_at(dims, 1), da);
  spec.root = random_ket(da, rng);
  spec.first_link = random_isometry(db, da, rng);
  std::size_t prev = db;
  for (std::size_t k = 0; k < links; ++k) {
    const std::size_t bk = dim_at(dims, k + 2);
    const std::size_t ek = std::max<std::size_t>(2, (prev + bk - 1) / bk);
    spec.links.push_back({bk, ek, random_isometry(bk * ek, prev, rng)});
    prev = bk;
  }
  return spec;
}

// Fan-out (a ← e → b) or Markov (b → e → a) core, each node with a root
// above it and a child below it, all six of which are traced.
QBNet random_trinode(std::size_t da, std::size_t db, std::size_t de, bool fan_out, Rng& rng) {
  const std::size_t g = 2;
  std::vector<Node> nodes{Node::root("alpha0", random_ket(g, rng), Marking::Traced),
                          Node::root("eps0", random_ket(g, rng), Marking::Traced),
                          Node::root("beta0", random_ket(g, rng), Marking::Traced)};
  if (fan_out) {
    nodes.push_back(Node::child("e", {"eps0"}, random_amplitude_table(de, g, rng)));
    nodes.push_back(Node::child("a", {"alpha0", "e"}, random_amplitude_table(da, g * de, rng)));
    nodes.push_back(Node::child("b", {"beta0", "e"}, random_amplitude_table(db, g * de, rng)));
  } else {
    nodes.push_back(Node::child("b", {"beta0"}, random_amplitude_table(db, g, rng)));
    nodes.push_back(Node::child("e", {"eps0", "b"}, random_amplitude_table(de, g * db, rng)));
    nodes.push_back(Node::child("a", {"alpha0", "e"}, random_amplitude_table(da, g * de, rng)));
  }
  nodes.push_back(Node::child("alpha1", {"a"}, random_amplitude_table(g, da, rng), Marking::Traced));
  nodes.push_back(Node::child("eps1", {"e"}, random_amplitude_table(g, de, rng), Marking::Traced));
  nodes.push_back(Node::child("beta1", {"b"}, random_amplitude_table(g, db, rng), Marking::Traced));
  return QBNet(std::move(nodes));
}

}  // namespace

Instance make_random_instance(InequalityId id, const std::vector<std::size_t>& dims, Seed seed) {
  Rng rng(seed);
  const std::size_t d0 = dim_at(dims, 0), d1 = dim_at(dims, 1), d2 = dim_at(dims, 2);
  switch (id) {
    case InequalityId::MiNonneg:
    case InequalityId::ArakiLieb:
    case InequalityId::CondBounds:
    case InequalityId::EntropyMeasurement:
    case InequalityId::CondOnClassical:
      return random_mixed(SubsystemLayout{{"b", d0}, {"a", d1}}, rng);
    case InequalityId::CmiNonneg:
      return random_mixed(SubsystemLayout{{"b", d0}, {"a", d1}, {"e", d2}}, rng);
    case InequalityId::UnitalMonotone: {
      const SubsystemLayout layout{{"q", d0}};
      auto state = random_mixed(layout, rng);
      if (rng.below(2) == 0) {
        // Mixture of unitaries.
        const std::size_t k = rng.below(3) + 1;
        const RealVector w = random_distribution(k, rng);
        std::vector<ComplexMatrix> kraus;
        for (std::size_t i = 0; i < k; ++i) kraus.push_back(std::sqrt(w(static_cast<Eigen::Index>(i))) *
                                                            random_unitary(d0, rng));
        return ChannelInstance{KrausChannel(d0, d0, std::move(kraus)), std::move(state)};
      }
      return ChannelInstance{KrausChannel::from_stochastic(random_doubly_stochastic(d0, rng)), std::move(state)};
    }
    case InequalityId::FunctionDecrease:
      return StochasticInstance{random_function_matrix(d1, d0, rng), random_distribution(d0, rng)};
    case InequalityId::EntropyPreparation: {
      const std::size_t count = d1;
      const RealVector w = random_distribution(count, rng);
      std::vector<LabeledState> states;
      const SubsystemLayout layout{{"x", d0}};
      // A quarter of the instances use orthonormal states when they fit.
      const bool orthonormal = count <= d0 && rng.below(4) == 0;
      const ComplexMatrix basis = orthonormal ? random_unitary(d0, rng) : ComplexMatrix();
      for (std::size_t j = 0; j < count; ++j) {
        const ComplexVector ket = orthonormal ? ComplexVector(basis.col(static_cast<Eigen::Index>(j)))
                                              : random_ket(d0, rng);
        states.push_back(LabeledState::from_ket(layout, ket));
      }
      return Ensemble(w, std::move(states));
    }
    case InequalityId::DpClassical:
      return ClassicalChainInstance{random_distribution(d0, rng),
                                    {random_stochastic(d1, d0, rng), random_stochastic(d2, d1, rng)}};
    case InequalityId::DpFunction: {
      const std::size_t dy = dim_at(dims, 2), db = dim_at(dims, 3);
      return ClassicalChainInstance{random_distribution(d0, rng),
                                    {random_stochastic(d1, d0, rng), random_function_matrix(dy, d1, rng),
                                     random_stochastic(db, dy, rng)}};
    }
    case InequalityId::DpSingleGraph: return random_chain_spec(dims, 2, rng);
    case InequalityId::DpMultigraph: return random_chain_spec(dims, 3, rng);
    case InequalityId::CloneMerge: return random_ensemble(d0, d1, rng, "b");
    case InequalityId::HolevoIsMi: return random_ensemble(d0, d1, rng, "q");
    case InequalityId::TrinodeCmiZero: {
      const bool fan_out = rng.below(2) == 0;
      return random_trinode(d0, d1, d2, fan_out, rng);
    }
    case InequalityId::IsometryTrace: {
      const ComplexVector root = random_ket(d0, rng);
      const std::size_t db = std::max(d1, d0);
      const ComplexMatrix ba = random_isometry(db, d0, rng);
      return IsometryTraceInstance{root, ba, random_isometry(std::max(d2, db), db, rng)};
    }
    case InequalityId::MreClassical:
      return MreClassicalInstance{random_stochastic(d0, d0, rng), random_distribution(d0, rng),
                                  random_distribution(d0, rng)};
    case InequalityId::MreQuantum: {
      const SubsystemLayout layout{{"q", d0}};
      const std::size_t k = rng.below(d0 * d0) + 1;
      auto channel = random_channel(d0, d0, k, rng);
      auto rho = random_mixed(layout, rng);
      auto sigma = random_density_matrix(layout, d0, rng);
      return MreQuantumInstance{std::move(channel), std::move(rho), std::move(sigma)};
    }
    case InequalityId::HolevoBound:
      return HolevoBoundInstance{random_ensemble(d0, d1, rng, "q"), 50, derive_seed(seed, 1)};
  }
  throw Error(ErrorKind::InvalidArgument, "unregistered inequality id");
}

BatchResult run_batch(InequalityId id, std::size_t trials, const std::vector<std::size_t>& dims, Seed base_seed) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
  BatchResult result{id, trials, 0, std::numeric_limits<double>::infinity(), {}};
  result.verdicts.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const Seed seed = derive_seed(base_seed, t);
    auto v = check_entropic(id, make_random_instance(id, dims, seed));
    v.seed = seed;
    if (v.holds) ++result.passed;
    result.min_margin = std::min(result.min_margin, v.margin);
    result.verdicts.push_back(std::move(v));
  }
  return result;
}

std::vector<CheckVerdict> counterexample_suite() {
  const double r2 = 1.0 / std::numbers::sqrt2;
  std::vector<CheckVerdict> out;

  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = r2;
  bell(3) = r2;
  const auto clone = LabeledState::from_ket(SubsystemLayout{{"a", 2}, {"a'", 2}}, bell);
  auto v = verdict_eq("clone_quantum", "S(a,a')=S(a)", S(clone, {"a", "a'"}), S(clone, {"a"}));
  v.dims = {2, 2};
  out.push_back(std::move(v));

  // Σ_{a,b} |b⟩|a⟩|a⟩ / √(N_a N_b) on (b, a, a′).
  ComplexVector ket = ComplexVector::Zero(8);
  for (Eigen::Index b = 0; b < 2; ++b) {
    for (Eigen::Index a = 0; a < 2; ++a) ket((b * 2 + a) * 2 + a) = 0.5;
  }
  const auto baa = LabeledState::from_ket(SubsystemLayout{{"b", 2}, {"a", 2}, {"a'", 2}}, ket);
  v = verdict_eq("clone_pure", "S(b,a,a')=S(b,a)", S(baa, {"b", "a", "a'"}), S(baa, {"b", "a"}));
  v.dims = {2, 2, 2};
  out.push_back(std::move(v));
  v = verdict_eq("clone_pure_marginal", "S(b,a,a')=S(a')", S(baa, {"b", "a", "a'"}), S(baa, {"a'"}));
  v.dims = {2, 2, 2};
  out.push_back(std::move(v));

  // Collider a → e ← b with e = a XOR b.
  RealVector p = RealVector::Zero(8);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) p((a * 2 + b) * 2 + (a ^ b)) = 0.25;
  }
  const JointDist collider(SubsystemLayout{{"a", 2}, {"b", 2}, {"e", 2}}, p);
  v = verdict_eq("collider_cmi", "H(a:b|e)=0",
                 classical_entropy(Quantity::conditional_mutual({"a"}, {"b"}, {"e"}), collider), 0.0);
  v.dims = {2, 2, 2};
  out.push_back(std::move(v));
  return out;
}

}  // namespace qbnets
