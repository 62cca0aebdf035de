#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbnets/error.hpp"

namespace qbnets {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Eigenvalues below this are treated as exact zeros in logs and entropy sums.
inline constexpr double kSpectralClip = 1e-12;
/// Tolerance for Hermiticity, unit trace and positivity of a density matrix.
inline constexpr double kStateTolerance = 1e-10;
/// Largest total Hilbert-space dimension a layout may describe.
inline constexpr std::size_t kMaxTotalDim = 4096;

struct Subsystem {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

/// Ordered list of named tensor factors. Order is significant: the first
/// factor is the most significant digit of the row-major flat index.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Subsystem> parts);
  SubsystemLayout(std::initializer_list<Subsystem> parts)
      : SubsystemLayout(std::vector<Subsystem>(parts)) {}

  const std::vector<Subsystem>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  std::size_t total_dim() const noexcept { return total_dim_; }

  bool contains(std::string_view label) const;
  /// Position of `label`; throws ErrorKind::UnknownLabel if absent.
  std::size_t index_of(std::string_view label) const;
  std::size_t dim_of(std::string_view label) const { return parts_[index_of(label)].dim; }
  std::vector<std::string> labels() const;

  /// Layout restricted to `keep`, preserving this layout's order.
  SubsystemLayout restricted(std::span<const std::string> keep) const;
  SubsystemLayout renamed(std::string_view from, std::string_view to) const;
  SubsystemLayout with_dim(std::string_view label, std::size_t dim) const;

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<Subsystem> parts_;
  std::size_t total_dim_ = 1;
};

struct StateDiagnostics {
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;

  bool valid(double tol = kStateTolerance) const {
    return hermiticity_deviation <= tol && trace_deviation <= tol && min_eigenvalue >= -tol;
  }
  double max_deviation() const;
};

StateDiagnostics diagnose_state(const ComplexMatrix& m);

/// A density matrix over a labeled tensor-product layout.
class LabeledState {
 public:
  /// Validates Hermiticity, unit trace and positivity; throws InvalidState.
  LabeledState(SubsystemLayout layout, ComplexMatrix matrix);

  /// Skips the spectral validation. For results of operations that preserve
  /// the invariants by construction.
  static LabeledState trusted(SubsystemLayout layout, ComplexMatrix matrix);

  static LabeledState from_ket(SubsystemLayout layout, const ComplexVector& ket);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return layout_.total_dim(); }

 private:
  struct TrustedTag {};
  LabeledState(SubsystemLayout layout, ComplexMatrix matrix, TrustedTag);

  SubsystemLayout layout_;
  ComplexMatrix matrix_;
};

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

LabeledState partial_trace(const LabeledState& state, std::span<const std::string> keep);
LabeledState partial_trace(const LabeledState& state, std::initializer_list<std::string> keep);

/// Reorders the tensor factors so that the result's layout follows `order`,
/// which must be a permutation of the state's labels.
LabeledState permute_subsystems(const LabeledState& state, std::span<const std::string> order);
LabeledState permute_subsystems(const LabeledState& state, std::initializer_list<std::string> order);

/// Eigen-decomposition of (m + m†)/2.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

/// Σ_{λ>clip} ln(λ) v v†: the logarithm restricted to the support.
ComplexMatrix support_log(const LabeledState& state);
ComplexMatrix support_log(const ComplexMatrix& hermitian);

/// exp of a Hermitian matrix via its eigendecomposition.
ComplexMatrix hermitian_exp(const ComplexMatrix& hermitian);

/// Applies op ⊗ I to the named factor. op may be rectangular; the returned
/// layout carries the new dimension for that factor.
ComplexMatrix lift_operator(const SubsystemLayout& layout, std::string_view label,
                            const ComplexMatrix& op);

double max_abs(const ComplexMatrix& m);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-major multi-index of flat index `flat` in `layout`.
std::vector<std::size_t> unflatten(const SubsystemLayout& layout, std::size_t flat);

}  // namespace qbnets
