#pragma once

#include <vector>

#include "qbnets/tensor.hpp"

namespace qbnets {

/// Kraus tolerance for completeness, unitality and isometry checks.
inline constexpr double kChannelTolerance = 1e-10;

/// A CPTP map given by Kraus operators K_μ of shape out_dim × in_dim.
///
/// Construction checks only shape consistency; completeness is reported by
/// validate_channel() so that invalid Kraus sets can be inspected.
class KrausChannel {
 public:
  KrausChannel(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus);

  std::size_t in_dim() const noexcept { return in_dim_; }
  std::size_t out_dim() const noexcept { return out_dim_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  static KrausChannel identity(std::size_t dim);
  static KrausChannel unitary(const ComplexMatrix& u);
  /// Projective dephasing in the computational basis.
  static KrausChannel dephasing(std::size_t dim);
  /// Embedding of a column-stochastic T(b|a) via K_{b,a} = √T(b|a) |b⟩⟨a|.
  static KrausChannel from_stochastic(const RealMatrix& t);
  /// Measurement in the basis given by the columns of `basis`: K_y = |u_y⟩⟨u_y|.
  static KrausChannel projective(const ComplexMatrix& basis);

 private:
  std::size_t in_dim_;
  std::size_t out_dim_;
  std::vector<ComplexMatrix> kraus_;
};

struct ChannelValidity {
  bool valid = false;
  double max_deviation = 0.0;
};

/// Checks Σ K†K = I within kChannelTolerance.
ChannelValidity validate_channel(const KrausChannel& c);

/// Σ K ρ K† on the factor `target`; the factor's dimension becomes out_dim.
LabeledState apply_channel(const KrausChannel& c, const LabeledState& state, std::string_view target);

/// Σ_y A(y|x) A*(y|x') = δ(x,x'). Rows index y, columns index x.
bool is_isometry(const ComplexMatrix& amplitudes, double tol = kChannelTolerance);

/// Σ K K† = I; throws InvalidArgument for non-square channels.
bool is_unital(const KrausChannel& c);

/// Unitary U on q⊗y (q major, y minor) with ⟨q2,y|U|q1,0⟩ = ⟨q2|K_y|q1⟩.
/// The y dimension equals the Kraus count.
ComplexMatrix stinespring_dilation(const KrausChannel& c);

/// Extracts K_y = ⟨·,y|U|·,0⟩ from a dilation built by stinespring_dilation.
std::vector<ComplexMatrix> dilation_blocks(const ComplexMatrix& u, std::size_t q_dim, std::size_t y_dim);

/// T(b|a) = Σ_μ |⟨b|K_μ|a⟩|².
RealMatrix induced_transition(const KrausChannel& c);

/// True when every column sums to 1 and entries are non-negative.
bool is_column_stochastic(const RealMatrix& t, double tol = kChannelTolerance);
bool is_doubly_stochastic(const RealMatrix& t, double tol = kChannelTolerance);

}  // namespace qbnets
