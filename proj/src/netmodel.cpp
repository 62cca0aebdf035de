#include "qbnets/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace qbnets {

namespace {

constexpr std::size_t kMaxAssignments = std::size_t{1} << 24;

struct VarRef {
  std::size_t node = 0;
  int part = -1;  // -1: the whole node
};

struct Variable {
  std::string label;
  std::size_t dim = 1;
  Marking marking = Marking::Visible;
};

// Resolves every node/part label of a net to its owner.
std::unordered_map<std::string, VarRef> label_index(const std::vector<Node>& nodes) {
  std::unordered_map<std::string, VarRef> index;
  auto add = [&](const std::string& label, VarRef ref) {
    if (label.empty()) throw Error(ErrorKind::InvalidNet, "empty node label");
    if (!index.emplace(label, ref).second) {
      throw Error(ErrorKind::InvalidNet, "duplicate label '" + label + "'");
    }
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    add(nodes[i].label, {i, -1});
    for (std::size_t p = 0; p < nodes[i].parts.size(); ++p) add(nodes[i].parts[p].label, {i, static_cast<int>(p)});
  }
  return index;
}

std::size_t ref_dim(const std::vector<Node>& nodes, VarRef r) {
  const auto& n = nodes[r.node];
  return r.part < 0 ? n.state_count : n.parts[static_cast<std::size_t>(r.part)].dim;
}

}  // namespace

std::string_view to_string(Marking m) {
  switch (m) {
    case Marking::Visible: return "visible";
    case Marking::Slashed: return "slashed";
    case Marking::Traced: return "traced";
    case Marking::Classical: return "classical";
  }
  return "visible";
}

Marking parse_marking(std::string_view s) {
  if (s == "visible") return Marking::Visible;
  if (s == "slashed") return Marking::Slashed;
  if (s == "traced") return Marking::Traced;
  if (s == "classical") return Marking::Classical;
  throw Error(ErrorKind::Parse, "unknown marking '" + std::string(s) + "'");
}

Node Node::root(std::string label, const ComplexVector& ket, Marking marking) {
  return Node{std::move(label), static_cast<std::size_t>(ket.size()), {}, ComplexMatrix(ket), marking, {}};
}

Node Node::child(std::string label, std::vector<std::string> parents, ComplexMatrix amplitudes,
                 Marking marking) {
  const auto n = static_cast<std::size_t>(amplitudes.rows());
  return Node{std::move(label), n, std::move(parents), std::move(amplitudes), marking, {}};
}

QBNet::QBNet(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorKind::InvalidNet, "net has no nodes");
  const auto index = label_index(nodes_);

  std::vector<std::vector<std::size_t>> deps(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.state_count == 0) throw Error(ErrorKind::InvalidNet, "node '" + n.label + "' has no states");
    if (!n.parts.empty()) {
      std::size_t prod = 1;
      for (const auto& p : n.parts) {
        if (p.dim == 0) throw Error(ErrorKind::InvalidNet, "part '" + p.label + "' has dim 0");
        prod *= p.dim;
      }
      if (prod != n.state_count) {
        throw Error(ErrorKind::InvalidNet, "parts of '" + n.label + "' do not multiply to its state count");
      }
    }
    std::size_t parent_assignments = 1;
    for (const auto& pl : n.parents) {
      const auto it = index.find(pl);
      if (it == index.end()) {
        throw Error(ErrorKind::InvalidNet, "node '" + n.label + "' has unknown parent '" + pl + "'");
      }
      if (it->second.node == i) throw Error(ErrorKind::InvalidNet, "node '" + n.label + "' is its own parent");
      deps[i].push_back(it->second.node);
      parent_assignments *= ref_dim(nodes_, it->second);
    }
    if (static_cast<std::size_t>(n.amplitudes.rows()) != n.state_count ||
        static_cast<std::size_t>(n.amplitudes.cols()) != parent_assignments) {
      throw Error(ErrorKind::InvalidNet,
                  "amplitude table of '" + n.label + "' must be " + std::to_string(n.state_count) + "x" +
                      std::to_string(parent_assignments));
    }
    if (n.parents.empty() && std::abs(n.amplitudes.squaredNorm() - 1.0) > 1e-10) {
      throw Error(ErrorKind::InvalidNet, "root '" + n.label + "' is not a normalized ket");
    }
  }

  // Kahn's algorithm, always taking the earliest listed ready node.
  std::vector<bool> placed(nodes_.size(), false);
  while (order_.size() < nodes_.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (placed[i]) continue;
      const bool ready = std::all_of(deps[i].begin(), deps[i].end(), [&](std::size_t d) { return placed[d]; });
      if (ready) {
        placed[i] = true;
        order_.push_back(i);
        progressed = true;
        break;
      }
    }
    if (!progressed) throw Error(ErrorKind::InvalidNet, "net contains a cycle");
  }
}

const Node& QBNet::node(std::string_view label) const {
  for (const auto& n : nodes_) {
    if (n.label == label) return n;
  }
  throw Error(ErrorKind::UnknownLabel, "no node labeled '" + std::string(label) + "'");
}

QBNet QBNet::with_marking(std::string_view label, Marking marking) const {
  auto nodes = nodes_;
  for (auto& n : nodes) {
    if (n.label == label) {
      if (!n.parts.empty()) {
        throw Error(ErrorKind::InvalidArgument, "node '" + n.label + "' is split; mark its parts");
      }
      n.marking = marking;
      return QBNet(std::move(nodes));
    }
    for (auto& p : n.parts) {
      if (p.label == label) {
        p.marking = marking;
        return QBNet(std::move(nodes));
      }
    }
  }
  throw Error(ErrorKind::UnknownLabel, "no node or part labeled '" + std::string(label) + "'");
}

LabeledState classicize(const LabeledState& state, std::string_view label) {
  const auto& layout = state.layout();
  const std::size_t pos = layout.index_of(label);
  std::size_t stride = 1;
  for (std::size_t i = pos + 1; i < layout.size(); ++i) stride *= layout.parts()[i].dim;
  const std::size_t dim = layout.parts()[pos].dim;
  ComplexMatrix out = state.matrix();
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const std::size_t dr = (static_cast<std::size_t>(r) / stride) % dim;
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      if ((static_cast<std::size_t>(c) / stride) % dim != dr) out(r, c) = 0.0;
    }
  }
  return LabeledState::trusted(layout, std::move(out));
}

LabeledState compile_density(const QBNet& net, CompileOptions options) {
  const auto& nodes = net.nodes();
  const auto index = label_index(nodes);

  // Variables in topological order; each node owns one or more of them.
  std::vector<Variable> vars;
  std::vector<std::vector<std::size_t>> owned(nodes.size());
  for (std::size_t ni : net.topological_order()) {
    const auto& n = nodes[ni];
    if (n.parts.empty()) {
      owned[ni].push_back(vars.size());
      vars.push_back({n.label, n.state_count, n.marking});
    } else {
      for (const auto& p : n.parts) {
        owned[ni].push_back(vars.size());
        vars.push_back({p.label, p.dim, p.marking});
      }
    }
  }

  std::size_t assignments = 1;
  std::vector<Subsystem> out_parts;
  std::vector<std::size_t> out_vars, traced_vars;
  std::size_t traced_dim = 1;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    assignments *= vars[v].dim;
    if (assignments > kMaxAssignments) throw Error(ErrorKind::InvalidNet, "net too large to enumerate");
    switch (vars[v].marking) {
      case Marking::Visible:
      case Marking::Classical:
        out_vars.push_back(v);
        out_parts.push_back({vars[v].label, vars[v].dim});
        break;
      case Marking::Traced:
        traced_vars.push_back(v);
        traced_dim *= vars[v].dim;
        break;
      case Marking::Slashed:
        break;
    }
  }
  SubsystemLayout layout(std::move(out_parts));

  // Parent lookups per node: (variable index) or (node, whole) references.
  struct ParentRef {
    std::size_t node;
    int var;  // -1: whole node value
    std::size_t dim;
  };
  std::vector<std::vector<ParentRef>> parents(nodes.size());
  for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
    for (const auto& pl : nodes[ni].parents) {
      const auto ref = index.at(pl);
      const int var = ref.part < 0 ? -1 : static_cast<int>(owned[ref.node][static_cast<std::size_t>(ref.part)]);
      parents[ni].push_back({ref.node, var, ref_dim(nodes, ref)});
    }
  }

  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(layout.total_dim()),
                                        static_cast<Eigen::Index>(traced_dim));
  std::vector<std::size_t> var_value(vars.size(), 0);
  std::vector<std::size_t> node_value(nodes.size(), 0);
  const auto& order = net.topological_order();

  std::function<void(std::size_t, Complex)> visit = [&](std::size_t depth, Complex amp) {
    if (depth == order.size()) {
      std::size_t row = 0, col = 0;
      for (std::size_t v : out_vars) row = row * vars[v].dim + var_value[v];
      for (std::size_t v : traced_vars) col = col * vars[v].dim + var_value[v];
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += amp;
      return;
    }
    const std::size_t ni = order[depth];
    const auto& n = nodes[ni];
    std::size_t pa = 0;
    for (const auto& p : parents[ni]) {
      pa = pa * p.dim + (p.var < 0 ? node_value[p.node] : var_value[static_cast<std::size_t>(p.var)]);
    }
    for (std::size_t s = 0; s < n.state_count; ++s) {
      const Complex a = n.amplitudes(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(pa));
      if (a == Complex(0.0, 0.0)) continue;
      node_value[ni] = s;
      std::size_t rest = s;
      for (std::size_t k = owned[ni].size(); k-- > 0;) {
        const std::size_t v = owned[ni][k];
        var_value[v] = rest % vars[v].dim;
        rest /= vars[v].dim;
      }
      visit(depth + 1, amp * a);
    }
  };
  visit(0, Complex(1.0, 0.0));

  const double norm = m.squaredNorm();
  if (norm < 1e-12) throw Error(ErrorKind::InvalidNet, "compiled state has vanishing trace");
  if (!options.renormalize && std::abs(norm - 1.0) > 1e-8) {
    throw Error(ErrorKind::InvalidNet,
                "compiled ket has squared norm " + std::to_string(norm) + "; amplitudes are inconsistent");
  }
  ComplexMatrix rho = m * m.adjoint() / norm;
  auto state = LabeledState::trusted(std::move(layout), std::move(rho));
  for (std::size_t v : out_vars) {
    if (vars[v].marking == Marking::Classical) state = classicize(state, vars[v].label);
  }
  return state;
}

std::string chain_b_label(std::size_t k) { return k == 0 ? std::string("b") : "b" + std::to_string(k); }
std::string chain_e_label(std::size_t k) { return "e" + std::to_string(k); }

QBNet build_chain_net(const ChainNetSpec& spec, std::size_t j, const std::vector<bool>& slash_intermediate) {
  if (j > spec.links.size()) {
    throw Error(ErrorKind::InvalidArgument, "chain has only " + std::to_string(spec.links.size()) + " links");
  }
  if (spec.first_link.cols() != spec.root.size()) {
    throw Error(ErrorKind::DimensionMismatch, "A(b|a) columns must match the dimension of a");
  }
  auto marking_for = [&](std::size_t k) {
    if (k == j) return Marking::Visible;
    return k < slash_intermediate.size() && slash_intermediate[k] ? Marking::Slashed : Marking::Visible;
  };
  std::vector<Node> nodes;
  nodes.push_back(Node::root("a", spec.root));
  nodes.push_back(Node::child("b", {"a"}, spec.first_link, marking_for(0)));
  std::size_t prev_dim = static_cast<std::size_t>(spec.first_link.rows());
  for (std::size_t k = 1; k <= j; ++k) {
    const auto& link = spec.links[k - 1];
    if (static_cast<std::size_t>(link.amplitude.cols()) != prev_dim ||
        static_cast<std::size_t>(link.amplitude.rows()) != link.b_dim * link.e_dim) {
      throw Error(ErrorKind::DimensionMismatch,
                  "link " + std::to_string(k) + " amplitude must be " + std::to_string(link.b_dim * link.e_dim) +
                      "x" + std::to_string(prev_dim));
    }
    Node beta = Node::child("beta" + std::to_string(k), {chain_b_label(k - 1)}, link.amplitude);
    beta.parts = {{chain_b_label(k), link.b_dim, marking_for(k)}, {chain_e_label(k), link.e_dim, Marking::Traced}};
    nodes.push_back(std::move(beta));
    prev_dim = link.b_dim;
  }
  return QBNet(std::move(nodes));
}

KrausChannel induced_channel(const ChainLink& link) {
  const auto b = static_cast<Eigen::Index>(link.b_dim);
  const auto e = static_cast<Eigen::Index>(link.e_dim);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index ei = 0; ei < e; ++ei) {
    ComplexMatrix k(b, link.amplitude.cols());
    for (Eigen::Index bi = 0; bi < b; ++bi) k.row(bi) = link.amplitude.row(bi * e + ei);
    kraus.push_back(std::move(k));
  }
  return KrausChannel(static_cast<std::size_t>(link.amplitude.cols()), link.b_dim, std::move(kraus));
}

EraseTracePair erase_vs_trace(const QBNet& net, std::string_view label) {
  const auto index = label_index(net.nodes());
  const auto it = index.find(std::string(label));
  if (it == index.end()) throw Error(ErrorKind::UnknownLabel, "no node labeled '" + std::string(label) + "'");
  const auto& owner = net.nodes()[it->second.node];
  const Marking current =
      it->second.part < 0 ? owner.marking : owner.parts[static_cast<std::size_t>(it->second.part)].marking;
  if (owner.parents.empty() || current != Marking::Visible) {
    throw Error(ErrorKind::InvalidArgument, "'" + std::string(label) + "' must be a visible non-root node");
  }
  return {compile_density(net.with_marking(label, Marking::Slashed), {.renormalize = true}),
          compile_density(net.with_marking(label, Marking::Traced))};
}

}  // namespace qbnets
