#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "qbnets/tensor.hpp"

namespace qbnets {

/// Relative entropies outside the support return this exact value.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
/// Probabilities at or below the spectral clip count as zero.
inline constexpr double kProbabilityClip = kSpectralClip;

/// Which entropic functional a Quantity denotes.
enum class QuantityKind {
  Entropy,            // S(first)
  Conditional,        // S(first | given)
  Mutual,             // S(first : second)
  ConditionalMutual,  // S(first : second | given)
};

/// A selector such as S(b,a), S(b|a), S(b:a) or S(b:a|e) over named
/// variables. Every slot may hold several labels.
struct Quantity {
  QuantityKind kind = QuantityKind::Entropy;
  std::vector<std::string> first;
  std::vector<std::string> second;
  std::vector<std::string> given;

  static Quantity entropy(std::vector<std::string> x);
  static Quantity conditional(std::vector<std::string> y, std::vector<std::string> x);
  static Quantity mutual(std::vector<std::string> y, std::vector<std::string> x);
  static Quantity conditional_mutual(std::vector<std::string> y, std::vector<std::string> x,
                                     std::vector<std::string> given);

  /// Parses "S(a,b)", "H(b|a)", "S(b:a)", "S(b:a|e)". The leading letter
  /// is informational only.
  static Quantity parse(std::string_view text);
  std::string to_string(char symbol = 'S') const;
};

/// Joint distribution over named discrete variables, stored row-major in
/// the layout's order.
class JointDist {
 public:
  JointDist(SubsystemLayout layout, RealVector probabilities);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const RealVector& probabilities() const noexcept { return probs_; }

  /// Marginal on `keep` (in layout order). An empty `keep` gives the
  /// trivial distribution {1}.
  JointDist marginal(std::span<const std::string> keep) const;

 private:
  SubsystemLayout layout_;
  RealVector probs_;
};

/// Distribution of a single variable `label` of dimension p.size().
JointDist single_variable(std::string label, const RealVector& p);
/// P(b,a) = T(b|a) P(a), laid out as (b, a).
JointDist joint_from_channel(std::string b_label, std::string a_label, const RealMatrix& t,
                             const RealVector& p_a);
/// ⟨x|ρ|x⟩ over the state's own layout.
JointDist diagonal_distribution(const LabeledState& state);

/// Σ −p ln p over entries above the probability clip.
double shannon_entropy(const RealVector& p);
/// Σ −λ ln λ over eigenvalues above the spectral clip.
double spectral_entropy(const ComplexMatrix& rho);
double von_neumann_entropy(const LabeledState& state);

double classical_entropy(const Quantity& q, const JointDist& p);
double quantum_entropy(const Quantity& q, const LabeledState& state);

/// Entropy of the marginal on `labels` (0 for an empty set).
double entropy_of(const LabeledState& state, std::span<const std::string> labels);
double entropy_of(const LabeledState& state, std::initializer_list<std::string> labels);
double entropy_of(const JointDist& p, std::span<const std::string> labels);
double entropy_of(const JointDist& p, std::initializer_list<std::string> labels);

double classical_relative_entropy(const RealVector& p, const RealVector& q);
double quantum_relative_entropy(const LabeledState& rho, const LabeledState& sigma);

/// {P(x), ρ_{q|x}}: weights plus conditional states sharing one layout.
class Ensemble {
 public:
  Ensemble(RealVector weights, std::vector<LabeledState> states);

  const RealVector& weights() const noexcept { return weights_; }
  const std::vector<LabeledState>& states() const noexcept { return states_; }
  const SubsystemLayout& layout() const { return states_.front().layout(); }
  std::size_t size() const noexcept { return states_.size(); }

  /// E_x ρ_{q|x}.
  LabeledState average() const;

 private:
  RealVector weights_;
  std::vector<LabeledState> states_;
};

/// Σ_x P(x) ρ_{q|x} ⊗ |x⟩⟨x|, laid out as (q..., x_label).
LabeledState cq_state(const Ensemble& e, const std::string& x_label = "x");

/// S(E_x ρ_{q|x}) − E_x S(ρ_{q|x}).
double holevo_information(const Ensemble& e);

double nats_to_bits(double nats);

}  // namespace qbnets
