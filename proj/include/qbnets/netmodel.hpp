#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbnets/channels.hpp"
#include "qbnets/tensor.hpp"

namespace qbnets {

/// How a net variable shows up in the compiled density matrix.
///  - Visible:   an index of the returned state.
///  - Slashed:   summed coherently inside the ket, never an index.
///  - Traced:    an index of the ket that is traced out of |ψ⟩⟨ψ|.
///  - Classical: an index of the returned state, dephased in its basis.
enum class Marking { Visible, Slashed, Traced, Classical };

std::string_view to_string(Marking m);
Marking parse_marking(std::string_view s);

/// Named component of a node whose index is split (δ-copied) into several
/// outputs. The node index is the row-major combination of its parts.
struct NodePart {
  std::string label;
  std::size_t dim = 1;
  Marking marking = Marking::Visible;
};

/// Amplitudes are A(own | parents): rows run over the node's states,
/// columns over the row-major assignment of `parents` in listed order.
/// A parent may name another node or a part of another node.
struct Node {
  std::string label;
  std::size_t state_count = 1;
  std::vector<std::string> parents;
  ComplexMatrix amplitudes;
  Marking marking = Marking::Visible;
  std::vector<NodePart> parts;

  static Node root(std::string label, const ComplexVector& ket, Marking marking = Marking::Visible);
  static Node child(std::string label, std::vector<std::string> parents, ComplexMatrix amplitudes,
                    Marking marking = Marking::Visible);
};

/// Directed acyclic quantum Bayesian network.
class QBNet {
 public:
  explicit QBNet(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::string_view label) const;
  /// Indices into nodes() in evaluation order (stable topological sort).
  const std::vector<std::size_t>& topological_order() const noexcept { return order_; }

  /// Copy with the node or part `label` re-marked.
  QBNet with_marking(std::string_view label, Marking marking) const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::size_t> order_;
};

struct CompileOptions {
  /// Divide by ‖ψ‖² instead of rejecting kets whose norm deviates from 1.
  /// Coherently summing a non-isometric node changes the norm legitimately.
  bool renormalize = false;
};

/// ψ(v) = Σ_{slashed} Π A(node | parents); ρ = |ψ⟩⟨ψ| with classical
/// variables dephased and traced variables removed. The result is laid out
/// over the visible and classical variables in topological order.
LabeledState compile_density(const QBNet& net, CompileOptions options = {});

/// Dephases `label` in its computational basis.
LabeledState classicize(const LabeledState& state, std::string_view label);

/// One link of a chain: an amplitude A(b_k, e_k | b_{k-1}) whose rows are
/// indexed by b_k * e_dim + e_k.
struct ChainLink {
  std::size_t b_dim = 1;
  std::size_t e_dim = 1;
  ComplexMatrix amplitude;
};

/// Ingredients of the chained nets ρ^(j): the root ket A(a), the first
/// amplitude A(b|a) and the links G_1, G_2, ...
struct ChainNetSpec {
  ComplexVector root;
  ComplexMatrix first_link;
  std::vector<ChainLink> links;
};

/// Label of the k-th chain output: "b" for k = 0, then "b1", "b2", ...
std::string chain_b_label(std::size_t k);
std::string chain_e_label(std::size_t k);

/// Net for ρ^(j) built from the first j links. Node "a" is the root, "b"
/// its child, and link k is node "beta<k>" split into parts b<k> and e<k>.
/// Every e<k> is traced, b_j is visible, and for k < j the output b_k is
/// slashed iff slash_intermediate[k] (missing entries mean visible).
QBNet build_chain_net(const ChainNetSpec& spec, std::size_t j,
                      const std::vector<bool>& slash_intermediate = {});

/// Channel b_{k-1} → b_k obtained by tracing e_k: K_e = (I ⊗ ⟨e|) A.
KrausChannel induced_channel(const ChainLink& link);

struct EraseTracePair {
  LabeledState erased;
  LabeledState traced;
};

/// Compiles `net` twice: once with `label` slashed (renormalized) and once
/// with it traced.
EraseTracePair erase_vs_trace(const QBNet& net, std::string_view label);

}  // namespace qbnets
