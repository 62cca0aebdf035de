#include "qbnets/randgen.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "qbnets/channels.hpp"

namespace qbnets {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Seed derive_seed(Seed base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::below(std::size_t n) {
  if (n <= 1) return 0;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % n);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

double Rng::exponential() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  return -std::log(u);
}

RealVector random_distribution(std::size_t n, Rng& rng) {
  RealVector p(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = rng.exponential();
  return p / p.sum();
}

RealMatrix random_stochastic(std::size_t rows, std::size_t cols, Rng& rng) {
  RealMatrix t(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < t.cols(); ++c) t.col(c) = random_distribution(rows, rng);
  return t;
}

RealMatrix random_permutation_matrix(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  RealMatrix p = RealMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) p(static_cast<Eigen::Index>(perm[a]), static_cast<Eigen::Index>(a)) = 1.0;
  return p;
}

RealMatrix random_doubly_stochastic(std::size_t n, Rng& rng) {
  const std::size_t terms = 2 * n;
  const RealVector w = random_distribution(terms, rng);
  RealMatrix t = RealMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < terms; ++k) t += w(static_cast<Eigen::Index>(k)) * random_permutation_matrix(n, rng);
  return t;
}

RealMatrix random_function_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  RealMatrix t = RealMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < t.cols(); ++c) t(static_cast<Eigen::Index>(rng.below(rows)), c) = 1.0;
  return t;
}

RealMatrix random_classical(ClassicalKind kind, std::size_t rows, std::size_t cols, Seed seed) {
  Rng rng(seed);
  switch (kind) {
    case ClassicalKind::Distribution: return random_distribution(rows, rng);
    case ClassicalKind::Stochastic: return random_stochastic(rows, cols, rng);
    case ClassicalKind::DoublyStochastic: return random_doubly_stochastic(rows, rng);
    case ClassicalKind::DeterministicFunction: return random_function_matrix(rows, cols, rng);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown classical kind");
}

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Fill column by column so the draw order is independent of storage order.
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  ComplexMatrix q = m;
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index p = 0; p < c; ++p) q.col(c) -= q.col(p) * q.col(p).dot(q.col(c));
    }
    const double norm = q.col(c).norm();
    if (norm < 1e-12) throw Error(ErrorKind::InvalidArgument, "columns are linearly dependent");
    q.col(c) /= norm;
  }
  return q;
}

ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows < cols) throw Error(ErrorKind::InvalidArgument, "isometry needs rows >= cols");
  return orthonormalize_columns(random_gaussian_matrix(rows, cols, rng));
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) { return random_isometry(n, n, rng); }

ComplexVector random_ket(std::size_t n, Rng& rng) {
  ComplexVector v = random_gaussian_matrix(n, 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix random_amplitude_table(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix t(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < t.cols(); ++c) t.col(c) = random_ket(rows, rng);
  return t;
}

LabeledState random_density_matrix(const SubsystemLayout& layout, std::size_t rank, Rng& rng) {
  if (rank < 1 || rank > layout.total_dim()) {
    throw Error(ErrorKind::InvalidArgument, "rank must lie in [1, total dim]");
  }
  const ComplexMatrix g = random_gaussian_matrix(layout.total_dim(), rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermiticity; the product above is Hermitian only up to rounding.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return LabeledState::trusted(layout, std::move(rho));
}

LabeledState random_density_matrix(const SubsystemLayout& layout, std::size_t rank, Seed seed) {
  Rng rng(seed);
  return random_density_matrix(layout, rank, rng);
}

LabeledState random_pure_state(const SubsystemLayout& layout, Rng& rng) {
  return LabeledState::from_ket(layout, random_ket(layout.total_dim(), rng));
}

KrausChannel random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, Rng& rng) {
  if (kraus_count < 1) throw Error(ErrorKind::InvalidArgument, "kraus_count must be >= 1");
  if (in_dim > out_dim * kraus_count) {
    throw Error(ErrorKind::InvalidArgument, "in_dim exceeds out_dim*kraus_count; no isometry exists");
  }
  const ComplexMatrix v = random_isometry(out_dim * kraus_count, in_dim, rng);
  std::vector<ComplexMatrix> kraus;
  const auto o = static_cast<Eigen::Index>(out_dim);
  for (std::size_t mu = 0; mu < kraus_count; ++mu) {
    kraus.emplace_back(v.middleRows(static_cast<Eigen::Index>(mu) * o, o));
  }
  return KrausChannel(in_dim, out_dim, std::move(kraus));
}

KrausChannel random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, Seed seed) {
  Rng rng(seed);
  return random_channel(in_dim, out_dim, kraus_count, rng);
}

}  // namespace qbnets
