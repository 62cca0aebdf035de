#include "qbnets/purestate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qbnets/entropy.hpp"

namespace qbnets {

namespace {

std::vector<std::string> complement(const SubsystemLayout& layout, std::span<const std::string> labels) {
  std::vector<std::string> out;
  for (const auto& p : layout.parts()) {
    if (std::find(labels.begin(), labels.end(), p.label) == labels.end()) out.push_back(p.label);
  }
  return out;
}

std::string block_name(const std::vector<std::string>& block) {
  std::string out;
  for (std::size_t i = 0; i < block.size(); ++i) out += (i ? "," : "") + block[i];
  return out;
}

}  // namespace

ComplexVector SchmidtForm::reconstruct() const {
  ComplexVector ket = ComplexVector::Zero(left.rows() * right.rows());
  for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
    for (Eigen::Index l = 0; l < left.rows(); ++l) {
      ket.segment(l * right.rows(), right.rows()) += coefficients(k) * left(l, k) * right.col(k);
    }
  }
  return ket;
}

bool is_pure(const LabeledState& state) {
  return eig_hermitian(state.matrix()).values.maxCoeff() >= 1.0 - kPurityTolerance;
}

ComplexVector pure_ket(const LabeledState& state) {
  const auto eig = eig_hermitian(state.matrix());
  const Eigen::Index top = eig.values.size() - 1;
  if (eig.values(top) < 1.0 - kPurityTolerance) {
    throw Error(ErrorKind::InvalidState,
                "state is not pure (largest eigenvalue " + std::to_string(eig.values(top)) + ")");
  }
  ComplexVector ket = eig.vectors.col(top);
  Eigen::Index pivot = 0;
  ket.cwiseAbs().maxCoeff(&pivot);
  ket *= std::conj(ket(pivot)) / std::abs(ket(pivot));
  return ket;
}

SchmidtForm schmidt_decompose(const LabeledState& psi, std::span<const std::string> left_labels) {
  if (left_labels.empty() || left_labels.size() >= psi.layout().size()) {
    throw Error(ErrorKind::InvalidArgument, "Schmidt cut needs nonempty blocks on both sides");
  }
  auto order = std::vector<std::string>(left_labels.begin(), left_labels.end());
  const auto right_labels = complement(psi.layout(), left_labels);
  order.insert(order.end(), right_labels.begin(), right_labels.end());
  const auto arranged = permute_subsystems(psi, order);
  const ComplexVector ket = pure_ket(arranged);

  std::vector<Subsystem> lp, rp;
  for (std::size_t i = 0; i < arranged.layout().size(); ++i) {
    (i < left_labels.size() ? lp : rp).push_back(arranged.layout().parts()[i]);
  }
  SchmidtForm form{{}, {}, {}, SubsystemLayout(std::move(lp)), SubsystemLayout(std::move(rp))};
  const auto nl = static_cast<Eigen::Index>(form.left_layout.total_dim());
  const auto nr = static_cast<Eigen::Index>(form.right_layout.total_dim());
  ComplexMatrix a(nl, nr);
  for (Eigen::Index l = 0; l < nl; ++l) a.row(l) = ket.segment(l * nr, nr).transpose();

  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) * s(rank) > kSpectralClip) ++rank;
  form.coefficients = s.head(rank);
  form.left = svd.matrixU().leftCols(rank);
  form.right = svd.matrixV().leftCols(rank).conjugate();
  return form;
}

SchmidtForm schmidt_decompose(const LabeledState& psi, std::initializer_list<std::string> left_labels) {
  return schmidt_decompose(psi, std::span<const std::string>(left_labels.begin(), left_labels.size()));
}

double fidelity(const ComplexVector& a, const ComplexVector& b) { return std::norm(a.dot(b)); }

LabeledState purify(const LabeledState& rho, const std::string& reference_label) {
  const auto eig = eig_hermitian(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = eig.values.size(); k-- > 0;) {
    if (eig.values(k) > kSpectralClip) support.push_back(k);
  }
  if (support.empty()) throw Error(ErrorKind::InvalidState, "state has empty support");
  auto parts = rho.layout().parts();
  parts.push_back({reference_label, support.size()});
  SubsystemLayout layout(std::move(parts));
  const auto r = static_cast<Eigen::Index>(support.size());
  ComplexVector ket = ComplexVector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  for (Eigen::Index k = 0; k < r; ++k) {
    const Eigen::Index idx = support[static_cast<std::size_t>(k)];
    const ComplexVector col = std::sqrt(eig.values(idx)) * eig.vectors.col(idx);
    for (Eigen::Index x = 0; x < col.size(); ++x) ket(x * r + k) = col(x);
  }
  return LabeledState::from_ket(std::move(layout), ket);
}

std::vector<CheckVerdict> check_pure_identities(const LabeledState& psi,
                                                const std::vector<std::vector<std::string>>& partition) {
  if (!is_pure(psi)) throw Error(ErrorKind::InvalidState, "pure-state identities need a pure state");
  const std::size_t nb = partition.size();
  if (nb < 1 || nb > 4) throw Error(ErrorKind::InvalidArgument, "partition must have 1 to 4 blocks");
  std::vector<std::string> seen;
  for (const auto& block : partition) {
    if (block.empty()) throw Error(ErrorKind::InvalidArgument, "partition blocks must be nonempty");
    for (const auto& l : block) {
      (void)psi.layout().index_of(l);
      if (std::find(seen.begin(), seen.end(), l) != seen.end()) {
        throw Error(ErrorKind::InvalidArgument, "partition blocks overlap at '" + l + "'");
      }
      seen.push_back(l);
    }
  }
  if (seen.size() != psi.layout().size()) {
    throw Error(ErrorKind::InvalidArgument, "partition must cover every subsystem");
  }

  // Entropy of every union of blocks, indexed by bitmask.
  const std::size_t full = (std::size_t{1} << nb) - 1;
  std::vector<double> ent(full + 1, 0.0);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    std::vector<std::string> labels;
    for (std::size_t b = 0; b < nb; ++b) {
      if (mask & (std::size_t{1} << b)) labels.insert(labels.end(), partition[b].begin(), partition[b].end());
    }
    ent[mask] = entropy_of(psi, labels);
  }
  auto name = [&](std::size_t mask) {
    std::string out;
    for (std::size_t b = 0; b < nb; ++b) {
      if (mask & (std::size_t{1} << b)) out += (out.empty() ? "" : ",") + block_name(partition[b]);
    }
    return out;
  };
  auto bit = [](std::size_t b) { return std::size_t{1} << b; };
  auto cond = [&](std::size_t y, std::size_t x) { return ent[y | x] - ent[x]; };
  auto mi = [&](std::size_t y, std::size_t x) { return ent[y] + ent[x] - ent[y | x]; };
  auto cmi = [&](std::size_t y, std::size_t x, std::size_t g) {
    return ent[y | g] + ent[x | g] - ent[g] - ent[y | x | g];
  };

  std::vector<CheckVerdict> out;
  out.push_back(verdict_eq("pure_total", "S(" + name(full) + ")=0", ent[full], 0.0));
  for (std::size_t mask = 1; mask < full; ++mask) {
    out.push_back(verdict_eq("pure_complement", "S(" + name(mask) + ")=S(" + name(full ^ mask) + ")", ent[mask],
                             ent[full ^ mask]));
  }

  std::vector<std::size_t> perm(nb);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const std::size_t i = bit(perm[0]);
    const std::string in = name(i);
    if (nb == 2) {
      const std::size_t j = bit(perm[1]);
      const std::string jn = name(j);
      out.push_back(verdict_eq("two_block_conditional", "S(" + in + "|" + jn + ")=-S(" + in + ")", cond(i, j), -ent[i]));
      out.push_back(verdict_eq("two_block_conditional", "S(" + in + "|" + jn + ")=-S(" + jn + ")", cond(i, j), -ent[j]));
      out.push_back(verdict_eq("two_block_mutual", "S(" + in + ":" + jn + ")=2S(" + in + ")", mi(i, j), 2 * ent[i]));
      out.push_back(verdict_eq("two_block_mutual", "S(" + in + ":" + jn + ")=2S(" + jn + ")", mi(i, j), 2 * ent[j]));
    } else if (nb == 3) {
      const std::size_t j = bit(perm[1]), k = bit(perm[2]);
      const std::string jn = name(j), kn = name(k);
      out.push_back(verdict_eq("three_block_conditional", "S(" + jn + "|" + in + ")=S(" + kn + ")-S(" + in + ")",
                               cond(j, i), ent[k] - ent[i]));
      out.push_back(verdict_eq("three_block_conditional_sign", "S(" + jn + "|" + in + ")=-S(" + jn + "|" + kn + ")",
                               cond(j, i), -cond(j, k)));
      out.push_back(verdict_eq("three_block_mutual", "S(" + in + ":" + jn + ")=S(" + in + ")+S(" + jn + ")-S(" + kn + ")",
                               mi(i, j), ent[i] + ent[j] - ent[k]));
      out.push_back(verdict_eq("three_block_cmi", "S(" + in + ":" + jn + "|" + kn + ")=S(" + in + ":" + jn + ")",
                               cmi(i, j, k), mi(i, j)));
    } else if (nb == 4) {
      const std::size_t j = bit(perm[1]), k = bit(perm[2]), l = bit(perm[3]);
      const std::string jn = name(j), kn = name(k), ln = name(l);
      const std::string lhs = "S(" + in + ":" + jn + "|" + kn + ")";
      out.push_back(verdict_eq("four_block_cmi_sum", lhs + "=S(" + in + "|" + kn + ")+S(" + in + "|" + ln + ")",
                               cmi(i, j, k), cond(i, k) + cond(i, l)));
      out.push_back(verdict_eq("four_block_cmi_swap", lhs + "=S(" + in + ":" + jn + "|" + ln + ")", cmi(i, j, k),
                               cmi(i, j, l)));
      out.push_back(verdict_eq("four_block_signed_difference",
                               lhs + "=S(" + in + "|" + kn + ")-S(" + in + "|" + ln + ")", cmi(i, j, k),
                               cond(i, k) - cond(i, l)));
      out.push_back(verdict_eq("four_block_signed_swap", lhs + "=-S(" + in + ":" + jn + "|" + ln + ")", cmi(i, j, k),
                               -cmi(i, j, l)));
    }
  } while (nb >= 2 && std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace qbnets
