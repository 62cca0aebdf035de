#pragma once

#include <string>
#include <vector>

#include "qbnets/tensor.hpp"
#include "qbnets/verdict.hpp"

namespace qbnets {

/// Largest eigenvalue must be within this of 1 for a state to count as pure.
inline constexpr double kPurityTolerance = 1e-9;

/// |ψ⟩ = Σ_k c_k |u_k⟩|v_k⟩ with c_k = √P(k) descending.
struct SchmidtForm {
  RealVector coefficients;
  ComplexMatrix left;   // columns u_k on the first block
  ComplexMatrix right;  // columns v_k on the second block
  SubsystemLayout left_layout;
  SubsystemLayout right_layout;

  /// Ket on left_layout ⊗ right_layout.
  ComplexVector reconstruct() const;
};

bool is_pure(const LabeledState& state);

/// Unit ket of a pure state (phase fixed by making the largest-magnitude
/// entry real positive). Throws InvalidState for mixed input.
ComplexVector pure_ket(const LabeledState& state);

/// Schmidt form across the cut `left_labels` | rest, via the SVD of the
/// amplitude matrix A(left, right). Throws InvalidState for mixed input.
SchmidtForm schmidt_decompose(const LabeledState& psi, std::span<const std::string> left_labels);
SchmidtForm schmidt_decompose(const LabeledState& psi, std::initializer_list<std::string> left_labels);

/// |ψ⟩|⟨φ|ψ⟩|² for unit kets.
double fidelity(const ComplexVector& a, const ComplexVector& b);

/// Σ_k √λ_k |v_k⟩|k⟩ on (state layout..., reference) with reference dim
/// equal to the rank.
LabeledState purify(const LabeledState& rho, const std::string& reference_label = "r");

/// Partial-entropy relations of a pure state for a partition into 2, 3 or
/// 4 blocks of subsystem labels. Each verdict is two-sided.
///
/// For any block count: S(all) = 0 and S(J) = S(Jᶜ) for every nonempty
/// proper union of blocks J. Then, per ordered choice of blocks:
///  - 2 blocks: S(I|J) = −S(I) = −S(J), S(I:J) = 2S(I) = 2S(J).
///  - 3 blocks: S(J|I) = S(K) − S(I), S(J|I) = −S(J|K),
///              S(I:J) = S(I) + S(J) − S(K), S(I:J|K) = S(I:J).
///  - 4 blocks: S(I:J|K) = S(I|K) + S(I|L) and S(I:J|K) = S(I:J|L), which
///              purity implies, plus the sign-flipped variants
///              S(I:J|K) = S(I|K) − S(I|L) and S(I:J|K) = −S(I:J|L) (ids
///              "four_block_signed_*"). The signed variants do not follow
///              from purity and fail on generic states.
std::vector<CheckVerdict> check_pure_identities(const LabeledState& psi,
                                                const std::vector<std::vector<std::string>>& partition);

}  // namespace qbnets
