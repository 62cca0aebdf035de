#include "qbnets/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace qbnets {

namespace {

std::vector<std::size_t> strides_of(const SubsystemLayout& layout) {
  std::vector<std::size_t> strides(layout.size(), 1);
  for (std::size_t i = layout.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * layout.parts()[i].dim;
  }
  return strides;
}

// Flat offsets (in the full layout) of every row-major assignment of the
// factors listed in `positions`.
std::vector<std::size_t> offsets_for(const SubsystemLayout& layout,
                                     const std::vector<std::size_t>& positions) {
  const auto strides = strides_of(layout);
  std::vector<std::size_t> offsets{0};
  for (std::size_t pos : positions) {
    const std::size_t d = layout.parts()[pos].dim;
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * d);
    for (std::size_t base : offsets) {
      for (std::size_t k = 0; k < d; ++k) next.push_back(base + k * strides[pos]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
  std::unordered_set<std::string> seen;
  for (const auto& p : parts_) {
    if (p.dim == 0) throw Error(ErrorKind::InvalidArgument, "subsystem '" + p.label + "' has dim 0");
    if (!seen.insert(p.label).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate subsystem label '" + p.label + "'");
    }
    total_dim_ *= p.dim;
    if (total_dim_ > kMaxTotalDim) {
      throw Error(ErrorKind::InvalidArgument,
                  "total dimension exceeds " + std::to_string(kMaxTotalDim));
    }
  }
}

bool SubsystemLayout::contains(std::string_view label) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.label == label; });
}

std::size_t SubsystemLayout::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].label == label) return i;
  }
  throw Error(ErrorKind::UnknownLabel, "no subsystem labeled '" + std::string(label) + "'");
}

std::vector<std::string> SubsystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.label);
  return out;
}

SubsystemLayout SubsystemLayout::restricted(std::span<const std::string> keep) const {
  for (const auto& k : keep) (void)index_of(k);
  std::vector<Subsystem> out;
  for (const auto& p : parts_) {
    if (std::find(keep.begin(), keep.end(), p.label) != keep.end()) out.push_back(p);
  }
  return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::renamed(std::string_view from, std::string_view to) const {
  auto parts = parts_;
  parts[index_of(from)].label = std::string(to);
  return SubsystemLayout(std::move(parts));
}

SubsystemLayout SubsystemLayout::with_dim(std::string_view label, std::size_t dim) const {
  auto parts = parts_;
  parts[index_of(label)].dim = dim;
  return SubsystemLayout(std::move(parts));
}

double StateDiagnostics::max_deviation() const {
  return std::max({hermiticity_deviation, trace_deviation, std::max(0.0, -min_eigenvalue)});
}

StateDiagnostics diagnose_state(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidState, "density matrix must be square");
  StateDiagnostics d;
  d.hermiticity_deviation = max_abs(m - m.adjoint());
  d.trace_deviation = std::abs(m.trace() - Complex(1.0, 0.0));
  d.min_eigenvalue = m.rows() == 0 ? 0.0 : eig_hermitian(m).values.minCoeff();
  return d;
}

LabeledState::LabeledState(SubsystemLayout layout, ComplexMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != static_cast<Eigen::Index>(layout_.total_dim()) ||
      matrix_.cols() != matrix_.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                    " but layout dimension is " + std::to_string(layout_.total_dim()));
  }
  const auto diag = diagnose_state(matrix_);
  if (!diag.valid()) {
    throw Error(ErrorKind::InvalidState,
                "not a density matrix (max deviation " + std::to_string(diag.max_deviation()) + ")");
  }
}

LabeledState::LabeledState(SubsystemLayout layout, ComplexMatrix matrix, TrustedTag)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {}

LabeledState LabeledState::trusted(SubsystemLayout layout, ComplexMatrix matrix) {
  if (matrix.rows() != static_cast<Eigen::Index>(layout.total_dim()) || matrix.cols() != matrix.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix does not match layout dimension");
  }
  return LabeledState(std::move(layout), std::move(matrix), TrustedTag{});
}

LabeledState LabeledState::from_ket(SubsystemLayout layout, const ComplexVector& ket) {
  const double norm = ket.norm();
  if (norm < kSpectralClip) throw Error(ErrorKind::InvalidState, "zero ket");
  const ComplexVector unit = ket / norm;
  return trusted(std::move(layout), unit * unit.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

LabeledState partial_trace(const LabeledState& state, std::span<const std::string> keep) {
  const auto& layout = state.layout();
  if (keep.empty()) throw Error(ErrorKind::InvalidArgument, "partial trace must keep a subsystem");
  std::vector<std::size_t> kept, traced;
  for (const auto& k : keep) (void)layout.index_of(k);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const bool k = std::find(keep.begin(), keep.end(), layout.parts()[i].label) != keep.end();
    (k ? kept : traced).push_back(i);
  }
  const auto keep_off = offsets_for(layout, kept);
  const auto trace_off = offsets_for(layout, traced);
  const auto n = static_cast<Eigen::Index>(keep_off.size());
  const auto& m = state.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      Complex acc = 0.0;
      for (std::size_t t : trace_off) {
        acc += m(static_cast<Eigen::Index>(keep_off[r] + t), static_cast<Eigen::Index>(keep_off[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return LabeledState::trusted(layout.restricted(keep), std::move(out));
}

LabeledState partial_trace(const LabeledState& state, std::initializer_list<std::string> keep) {
  return partial_trace(state, std::span<const std::string>(keep.begin(), keep.size()));
}

LabeledState permute_subsystems(const LabeledState& state, std::span<const std::string> order) {
  const auto& layout = state.layout();
  if (order.size() != layout.size()) {
    throw Error(ErrorKind::InvalidArgument, "permutation must list every subsystem once");
  }
  std::vector<std::size_t> positions;
  std::vector<Subsystem> parts;
  for (const auto& label : order) {
    positions.push_back(layout.index_of(label));
    parts.push_back(layout.parts()[positions.back()]);
  }
  SubsystemLayout target(std::move(parts));  // rejects duplicates
  const auto old_index = offsets_for(layout, positions);
  const auto n = static_cast<Eigen::Index>(old_index.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = state.matrix()(static_cast<Eigen::Index>(old_index[r]), static_cast<Eigen::Index>(old_index[c]));
    }
  }
  return LabeledState::trusted(std::move(target), std::move(out));
}

LabeledState permute_subsystems(const LabeledState& state, std::initializer_list<std::string> order) {
  return permute_subsystems(state, std::span<const std::string>(order.begin(), order.size()));
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::InvalidArgument, "eig_hermitian needs a square matrix");
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix support_log(const ComplexMatrix& hermitian) {
  const auto eig = eig_hermitian(hermitian);
  ComplexMatrix out = ComplexMatrix::Zero(hermitian.rows(), hermitian.cols());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= kSpectralClip) continue;
    out += std::log(eig.values(k)) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return out;
}

ComplexMatrix support_log(const LabeledState& state) { return support_log(state.matrix()); }

ComplexMatrix hermitian_exp(const ComplexMatrix& hermitian) {
  const auto eig = eig_hermitian(hermitian);
  const RealVector e = eig.values.array().exp();
  return eig.vectors * e.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix lift_operator(const SubsystemLayout& layout, std::string_view label,
                            const ComplexMatrix& op) {
  const std::size_t pos = layout.index_of(label);
  if (static_cast<std::size_t>(op.cols()) != layout.parts()[pos].dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator input dim " + std::to_string(op.cols()) + " does not match subsystem '" +
                    std::string(label) + "'");
  }
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < pos; ++i) left *= layout.parts()[i].dim;
  for (std::size_t i = pos + 1; i < layout.size(); ++i) right *= layout.parts()[i].dim;
  const auto l = static_cast<Eigen::Index>(left);
  const auto r = static_cast<Eigen::Index>(right);
  return kron(kron(ComplexMatrix::Identity(l, l), op), ComplexMatrix::Identity(r, r));
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 0.5 * eig_hermitian(a - b).values.cwiseAbs().sum();
}

std::vector<std::size_t> unflatten(const SubsystemLayout& layout, std::size_t flat) {
  std::vector<std::size_t> digits(layout.size());
  for (std::size_t i = layout.size(); i-- > 0;) {
    digits[i] = flat % layout.parts()[i].dim;
    flat /= layout.parts()[i].dim;
  }
  return digits;
}

}  // namespace qbnets
