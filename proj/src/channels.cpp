#include "qbnets/channels.hpp"

#include <cmath>

namespace qbnets {

KrausChannel::KrausChannel(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (in_dim_ == 0 || out_dim_ == 0) throw Error(ErrorKind::InvalidChannel, "channel dims must be positive");
  if (kraus_.empty()) throw Error(ErrorKind::InvalidChannel, "channel needs at least one Kraus operator");
  for (std::size_t i = 0; i < kraus_.size(); ++i) {
    const auto& k = kraus_[i];
    if (static_cast<std::size_t>(k.rows()) != out_dim_ || static_cast<std::size_t>(k.cols()) != in_dim_) {
      throw Error(ErrorKind::InvalidChannel,
                  "Kraus operator " + std::to_string(i) + " is " + std::to_string(k.rows()) + "x" +
                      std::to_string(k.cols()) + ", expected " + std::to_string(out_dim_) + "x" +
                      std::to_string(in_dim_));
    }
  }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return KrausChannel(dim, dim, {ComplexMatrix::Identity(n, n)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) {
  return KrausChannel(static_cast<std::size_t>(u.cols()), static_cast<std::size_t>(u.rows()), {u});
}

KrausChannel KrausChannel::dephasing(std::size_t dim) {
  return projective(ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

KrausChannel KrausChannel::from_stochastic(const RealMatrix& t) {
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index b = 0; b < t.rows(); ++b) {
    for (Eigen::Index a = 0; a < t.cols(); ++a) {
      ComplexMatrix k = ComplexMatrix::Zero(t.rows(), t.cols());
      k(b, a) = std::sqrt(std::max(0.0, t(b, a)));
      kraus.push_back(std::move(k));
    }
  }
  return KrausChannel(static_cast<std::size_t>(t.cols()), static_cast<std::size_t>(t.rows()), std::move(kraus));
}

KrausChannel KrausChannel::projective(const ComplexMatrix& basis) {
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index y = 0; y < basis.cols(); ++y) {
    kraus.emplace_back(basis.col(y) * basis.col(y).adjoint());
  }
  const auto n = static_cast<std::size_t>(basis.rows());
  return KrausChannel(n, n, std::move(kraus));
}

ChannelValidity validate_channel(const KrausChannel& c) {
  const auto n = static_cast<Eigen::Index>(c.in_dim());
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& k : c.kraus()) sum += k.adjoint() * k;
  const double dev = max_abs(sum - ComplexMatrix::Identity(n, n));
  return {dev <= kChannelTolerance, dev};
}

LabeledState apply_channel(const KrausChannel& c, const LabeledState& state, std::string_view target) {
  const auto& layout = state.layout();
  if (layout.dim_of(target) != c.in_dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "channel input dim " + std::to_string(c.in_dim()) + " != dim of '" +
                    std::string(target) + "' (" + std::to_string(layout.dim_of(target)) + ")");
  }
  if (const auto v = validate_channel(c); !v.valid) {
    throw Error(ErrorKind::InvalidChannel,
                "Kraus completeness violated by " + std::to_string(v.max_deviation));
  }
  auto out_layout = layout.with_dim(target, c.out_dim());
  const auto n = static_cast<Eigen::Index>(out_layout.total_dim());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& k : c.kraus()) {
    const ComplexMatrix lifted = lift_operator(layout, target, k);
    out += lifted * state.matrix() * lifted.adjoint();
  }
  return LabeledState::trusted(std::move(out_layout), std::move(out));
}

bool is_isometry(const ComplexMatrix& amplitudes, double tol) {
  if (amplitudes.rows() < amplitudes.cols()) return false;
  const auto gram = amplitudes.adjoint() * amplitudes;
  return max_abs(gram - ComplexMatrix::Identity(amplitudes.cols(), amplitudes.cols())) <= tol;
}

bool is_unital(const KrausChannel& c) {
  if (c.in_dim() != c.out_dim()) {
    throw Error(ErrorKind::InvalidArgument, "unitality needs a square channel");
  }
  const auto n = static_cast<Eigen::Index>(c.out_dim());
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& k : c.kraus()) sum += k * k.adjoint();
  return max_abs(sum - ComplexMatrix::Identity(n, n)) <= kChannelTolerance;
}

ComplexMatrix stinespring_dilation(const KrausChannel& c) {
  if (const auto v = validate_channel(c); !v.valid) {
    throw Error(ErrorKind::InvalidChannel,
                "cannot dilate: completeness violated by " + std::to_string(v.max_deviation));
  }
  if (c.in_dim() != c.out_dim()) {
    throw Error(ErrorKind::InvalidArgument, "dilation is defined for channels on one space");
  }
  const auto q = static_cast<Eigen::Index>(c.in_dim());
  const auto ny = static_cast<Eigen::Index>(c.kraus().size());
  const Eigen::Index n = q * ny;
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  std::vector<bool> filled(static_cast<std::size_t>(n), false);
  for (Eigen::Index q1 = 0; q1 < q; ++q1) {
    for (Eigen::Index y = 0; y < ny; ++y) {
      for (Eigen::Index q2 = 0; q2 < q; ++q2) {
        u(q2 * ny + y, q1 * ny) = c.kraus()[static_cast<std::size_t>(y)](q2, q1);
      }
    }
    filled[static_cast<std::size_t>(q1 * ny)] = true;
  }

  // Complete the remaining columns from the canonical basis, in order.
  std::vector<Eigen::Index> done;
  for (Eigen::Index col = 0; col < n; ++col) {
    if (filled[static_cast<std::size_t>(col)]) done.push_back(col);
  }
  Eigen::Index candidate = 0;
  for (Eigen::Index col = 0; col < n; ++col) {
    if (filled[static_cast<std::size_t>(col)]) continue;
    while (candidate < n) {
      ComplexVector v = ComplexVector::Unit(n, candidate++);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index d : done) v -= u.col(d) * u.col(d).dot(v);
      }
      const double norm = v.norm();
      if (norm > 1e-8) {
        u.col(col) = v / norm;
        done.push_back(col);
        break;
      }
    }
  }
  return u;
}

std::vector<ComplexMatrix> dilation_blocks(const ComplexMatrix& u, std::size_t q_dim, std::size_t y_dim) {
  const auto q = static_cast<Eigen::Index>(q_dim);
  const auto ny = static_cast<Eigen::Index>(y_dim);
  if (u.rows() != q * ny || u.cols() != q * ny) {
    throw Error(ErrorKind::DimensionMismatch, "dilation size does not match q_dim*y_dim");
  }
  std::vector<ComplexMatrix> blocks;
  for (Eigen::Index y = 0; y < ny; ++y) {
    ComplexMatrix k(q, q);
    for (Eigen::Index q2 = 0; q2 < q; ++q2) {
      for (Eigen::Index q1 = 0; q1 < q; ++q1) k(q2, q1) = u(q2 * ny + y, q1 * ny);
    }
    blocks.push_back(std::move(k));
  }
  return blocks;
}

RealMatrix induced_transition(const KrausChannel& c) {
  RealMatrix t = RealMatrix::Zero(static_cast<Eigen::Index>(c.out_dim()), static_cast<Eigen::Index>(c.in_dim()));
  for (const auto& k : c.kraus()) t += k.cwiseAbs2();
  return t;
}

bool is_column_stochastic(const RealMatrix& t, double tol) {
  if (t.size() == 0 || t.minCoeff() < -tol) return false;
  return (t.colwise().sum().array() - 1.0).abs().maxCoeff() <= tol;
}

bool is_doubly_stochastic(const RealMatrix& t, double tol) {
  return t.rows() == t.cols() && is_column_stochastic(t, tol) &&
         (t.rowwise().sum().array() - 1.0).abs().maxCoeff() <= tol;
}

}  // namespace qbnets
