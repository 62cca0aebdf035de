#include "qbnets/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qbnets {

namespace {

std::vector<std::string> split_labels(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) {
      throw Error(ErrorKind::Parse, "empty label in quantity");
    }
    out.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (char c : s) {
    if (c == ',') flush();
    else cur.push_back(c);
  }
  flush();
  return out;
}

std::string join(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += labels[i];
  }
  return out;
}

std::vector<std::string> merged(std::vector<std::string> a, const std::vector<std::string>& b) {
  for (const auto& x : b) {
    if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
  }
  return a;
}

// Evaluates a selector from any "entropy of a label set" function.
template <typename EntropyOf>
double evaluate(const Quantity& q, EntropyOf&& h) {
  switch (q.kind) {
    case QuantityKind::Entropy:
      return h(q.first);
    case QuantityKind::Conditional:
      return h(merged(q.first, q.given)) - h(q.given);
    case QuantityKind::Mutual:
      return h(q.first) + h(q.second) - h(merged(q.first, q.second));
    case QuantityKind::ConditionalMutual:
      return h(merged(q.first, q.given)) + h(merged(q.second, q.given)) - h(q.given) -
             h(merged(merged(q.first, q.second), q.given));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown quantity kind");
}

void require_labels(const Quantity& q, const SubsystemLayout& layout) {
  for (const auto* slot : {&q.first, &q.second, &q.given}) {
    for (const auto& l : *slot) (void)layout.index_of(l);
  }
}

}  // namespace

Quantity Quantity::entropy(std::vector<std::string> x) {
  return {QuantityKind::Entropy, std::move(x), {}, {}};
}
Quantity Quantity::conditional(std::vector<std::string> y, std::vector<std::string> x) {
  return {QuantityKind::Conditional, std::move(y), {}, std::move(x)};
}
Quantity Quantity::mutual(std::vector<std::string> y, std::vector<std::string> x) {
  return {QuantityKind::Mutual, std::move(y), std::move(x), {}};
}
Quantity Quantity::conditional_mutual(std::vector<std::string> y, std::vector<std::string> x,
                                      std::vector<std::string> given) {
  return {QuantityKind::ConditionalMutual, std::move(y), std::move(x), std::move(given)};
}

Quantity Quantity::parse(std::string_view text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw Error(ErrorKind::Parse, "expected X(...) in '" + std::string(text) + "'");
  }
  const auto body = text.substr(open + 1, close - open - 1);
  const auto bar = body.find('|');
  const auto main = body.substr(0, bar);
  const auto colon = main.find(':');
  Quantity q;
  if (colon == std::string_view::npos) {
    q.first = split_labels(main);
  } else {
    q.first = split_labels(main.substr(0, colon));
    q.second = split_labels(main.substr(colon + 1));
  }
  if (bar != std::string_view::npos) q.given = split_labels(body.substr(bar + 1));
  if (q.second.empty()) {
    q.kind = q.given.empty() ? QuantityKind::Entropy : QuantityKind::Conditional;
  } else {
    q.kind = q.given.empty() ? QuantityKind::Mutual : QuantityKind::ConditionalMutual;
  }
  return q;
}

std::string Quantity::to_string(char symbol) const {
  std::string out(1, symbol);
  out += '(' + join(first);
  if (!second.empty()) out += ':' + join(second);
  if (!given.empty()) out += '|' + join(given);
  return out + ')';
}

JointDist::JointDist(SubsystemLayout layout, RealVector probabilities)
    : layout_(std::move(layout)), probs_(std::move(probabilities)) {
  if (static_cast<std::size_t>(probs_.size()) != layout_.total_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "probability vector does not match layout");
  }
  if (probs_.size() > 0 && probs_.minCoeff() < -kProbabilityClip) {
    throw Error(ErrorKind::InvalidArgument, "negative probability");
  }
  if (std::abs(probs_.sum() - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "probabilities do not sum to 1");
  }
}

JointDist JointDist::marginal(std::span<const std::string> keep) const {
  auto sub = layout_.restricted(keep);
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    if (sub.contains(layout_.parts()[i].label)) positions.push_back(i);
  }
  RealVector out = RealVector::Zero(static_cast<Eigen::Index>(sub.total_dim()));
  for (std::size_t flat = 0; flat < layout_.total_dim(); ++flat) {
    const auto digits = unflatten(layout_, flat);
    std::size_t k = 0;
    for (std::size_t pos : positions) k = k * layout_.parts()[pos].dim + digits[pos];
    out(static_cast<Eigen::Index>(k)) += probs_(static_cast<Eigen::Index>(flat));
  }
  return JointDist(std::move(sub), std::move(out));
}

JointDist single_variable(std::string label, const RealVector& p) {
  return JointDist(SubsystemLayout({{std::move(label), static_cast<std::size_t>(p.size())}}), p);
}

JointDist joint_from_channel(std::string b_label, std::string a_label, const RealMatrix& t,
                             const RealVector& p_a) {
  if (t.cols() != p_a.size()) throw Error(ErrorKind::DimensionMismatch, "T columns must match P(a)");
  RealVector joint(t.rows() * t.cols());
  for (Eigen::Index b = 0; b < t.rows(); ++b) {
    for (Eigen::Index a = 0; a < t.cols(); ++a) joint(b * t.cols() + a) = t(b, a) * p_a(a);
  }
  return JointDist(SubsystemLayout({{std::move(b_label), static_cast<std::size_t>(t.rows())},
                                    {std::move(a_label), static_cast<std::size_t>(t.cols())}}),
                   std::move(joint));
}

JointDist diagonal_distribution(const LabeledState& state) {
  RealVector p = state.matrix().diagonal().real().cwiseMax(0.0);
  p /= p.sum();
  return JointDist(state.layout(), std::move(p));
}

double shannon_entropy(const RealVector& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > kProbabilityClip) h -= p(i) * std::log(p(i));
  }
  return h;
}

double spectral_entropy(const ComplexMatrix& rho) { return shannon_entropy(eig_hermitian(rho).values); }

double von_neumann_entropy(const LabeledState& state) { return spectral_entropy(state.matrix()); }

double entropy_of(const LabeledState& state, std::span<const std::string> labels) {
  if (labels.empty()) return 0.0;
  if (labels.size() == state.layout().size()) {
    for (const auto& l : labels) (void)state.layout().index_of(l);
    return von_neumann_entropy(state);
  }
  return von_neumann_entropy(partial_trace(state, labels));
}

double entropy_of(const LabeledState& state, std::initializer_list<std::string> labels) {
  return entropy_of(state, std::span<const std::string>(labels.begin(), labels.size()));
}

double entropy_of(const JointDist& p, std::span<const std::string> labels) {
  if (labels.empty()) return 0.0;
  return shannon_entropy(p.marginal(labels).probabilities());
}

double entropy_of(const JointDist& p, std::initializer_list<std::string> labels) {
  return entropy_of(p, std::span<const std::string>(labels.begin(), labels.size()));
}

double classical_entropy(const Quantity& q, const JointDist& p) {
  require_labels(q, p.layout());
  return evaluate(q, [&](const std::vector<std::string>& s) { return entropy_of(p, s); });
}

double quantum_entropy(const Quantity& q, const LabeledState& state) {
  require_labels(q, state.layout());
  return evaluate(q, [&](const std::vector<std::string>& s) { return entropy_of(state, s); });
}

double classical_relative_entropy(const RealVector& p, const RealVector& q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "distributions differ in size");
  double d = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= kProbabilityClip) continue;
    if (q(i) <= kProbabilityClip) return kInfinity;
    d += p(i) * std::log(p(i) / q(i));
  }
  return d;
}

double quantum_relative_entropy(const LabeledState& rho, const LabeledState& sigma) {
  if (!(rho.layout() == sigma.layout())) {
    throw Error(ErrorKind::ShapeMismatch, "relative entropy needs states on one layout");
  }
  const auto eig = eig_hermitian(sigma.matrix());
  const auto n = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix null_proj = ComplexMatrix::Zero(n, n);
  ComplexMatrix log_sigma = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const ComplexMatrix proj = eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    if (eig.values(k) <= kSpectralClip) null_proj += proj;
    else log_sigma += std::log(eig.values(k)) * proj;
  }
  // ρ is PSD, so the trace of the compressed block is its nuclear norm.
  const double leak = (null_proj * rho.matrix() * null_proj).trace().real();
  if (leak > 1e-9) return kInfinity;
  return (rho.matrix() * (support_log(rho) - log_sigma)).trace().real();
}

Ensemble::Ensemble(RealVector weights, std::vector<LabeledState> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (states_.empty()) throw Error(ErrorKind::InvalidArgument, "ensemble needs at least one state");
  if (static_cast<std::size_t>(weights_.size()) != states_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "one weight per ensemble state required");
  }
  if (weights_.minCoeff() < -kProbabilityClip || std::abs(weights_.sum() - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "ensemble weights must form a distribution");
  }
  for (const auto& s : states_) {
    if (!(s.layout() == states_.front().layout())) {
      throw Error(ErrorKind::ShapeMismatch, "ensemble states must share one layout");
    }
  }
}

LabeledState Ensemble::average() const {
  ComplexMatrix avg = ComplexMatrix::Zero(static_cast<Eigen::Index>(layout().total_dim()),
                                          static_cast<Eigen::Index>(layout().total_dim()));
  for (std::size_t x = 0; x < states_.size(); ++x) {
    avg += weights_(static_cast<Eigen::Index>(x)) * states_[x].matrix();
  }
  return LabeledState::trusted(layout(), std::move(avg));
}

LabeledState cq_state(const Ensemble& e, const std::string& x_label) {
  auto parts = e.layout().parts();
  parts.push_back({x_label, e.size()});
  SubsystemLayout layout(std::move(parts));
  const auto nq = static_cast<Eigen::Index>(e.layout().total_dim());
  const auto nx = static_cast<Eigen::Index>(e.size());
  ComplexMatrix out = ComplexMatrix::Zero(nq * nx, nq * nx);
  for (Eigen::Index x = 0; x < nx; ++x) {
    ComplexMatrix proj = ComplexMatrix::Zero(nx, nx);
    proj(x, x) = e.weights()(x);
    out += kron(e.states()[static_cast<std::size_t>(x)].matrix(), proj);
  }
  return LabeledState::trusted(std::move(layout), std::move(out));
}

double holevo_information(const Ensemble& e) {
  double avg_entropy = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    avg_entropy += e.weights()(static_cast<Eigen::Index>(x)) * von_neumann_entropy(e.states()[x]);
  }
  return von_neumann_entropy(e.average()) - avg_entropy;
}

double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

}  // namespace qbnets
