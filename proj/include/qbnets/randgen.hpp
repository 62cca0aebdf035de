#pragma once

#include <cstdint>
#include <random>

#include "qbnets/tensor.hpp"

namespace qbnets {

class KrausChannel;

using Seed = std::uint64_t;

/// Seed of trial `index` under `base`. Pure function of its arguments, so
/// batch results do not depend on evaluation order.
Seed derive_seed(Seed base, std::uint64_t index);

/// Reproducible random source.
///
/// Generator v1: std::mt19937_64 (its output sequence is fixed by the C++
/// standard), uniforms as the top 53 bits scaled to [0,1), and normals by
/// the Marsaglia polar method. Changing any of these changes every seeded
/// instance and every acceptance report.
class Rng {
 public:
  static constexpr int kGeneratorVersion = 1;

  explicit Rng(Seed seed) : engine_(seed) {}

  double uniform();
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);
  double normal();
  Complex complex_normal();
  /// Exponential(1) variate; normalized sums of these are Dirichlet(1,...,1).
  double exponential();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class ClassicalKind { Distribution, Stochastic, DoublyStochastic, DeterministicFunction };

// Classical objects. Transition matrices are column-stochastic: T(row=b, col=a).
RealVector random_distribution(std::size_t n, Rng& rng);
RealMatrix random_stochastic(std::size_t rows, std::size_t cols, Rng& rng);
RealMatrix random_doubly_stochastic(std::size_t n, Rng& rng);
RealMatrix random_function_matrix(std::size_t rows, std::size_t cols, Rng& rng);
RealMatrix random_permutation_matrix(std::size_t n, Rng& rng);
/// Dispatches on `kind`; a distribution comes back as an n×1 matrix.
RealMatrix random_classical(ClassicalKind kind, std::size_t rows, std::size_t cols, Seed seed);

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
/// rows×cols matrix with orthonormal columns (rows ≥ cols).
ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix random_unitary(std::size_t n, Rng& rng);
ComplexVector random_ket(std::size_t n, Rng& rng);
/// Table A(row | col) whose every column is a unit vector.
ComplexMatrix random_amplitude_table(std::size_t rows, std::size_t cols, Rng& rng);

/// G G† / tr(G G†) with G a dim×rank complex Gaussian matrix.
LabeledState random_density_matrix(const SubsystemLayout& layout, std::size_t rank, Rng& rng);
LabeledState random_density_matrix(const SubsystemLayout& layout, std::size_t rank, Seed seed);
LabeledState random_pure_state(const SubsystemLayout& layout, Rng& rng);

/// Channel whose stacked Kraus operators form a random isometry.
KrausChannel random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, Rng& rng);
KrausChannel random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, Seed seed);

/// Columns orthonormalized with modified Gram-Schmidt.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

}  // namespace qbnets
