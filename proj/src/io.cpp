#include "qbnets/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace qbnets::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error(std::string("expected an object with field '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    parse_error(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) parse_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

SubsystemLayout layout_from_json(const Json& j) {
  if (!j.is_array()) parse_error("layout must be an array");
  std::vector<Subsystem> parts;
  for (const auto& p : j) parts.push_back({string_field(p, "label"), size_field(p, "dim")});
  try {
    return SubsystemLayout(std::move(parts));
  } catch (const Error& e) {
    parse_error(std::string("bad layout: ") + e.what());
  }
}

RealVector real_vector_from_json(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of reals");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = real_from_json(j[i]);
  return v;
}

Json real_vector_to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real_to_json(v(i)));
  return out;
}

Json dims_to_json(const std::vector<std::size_t>& dims) {
  Json out = Json::array();
  for (auto d : dims) out.push_back(d);
  return out;
}

}  // namespace

Json real_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  parse_error("expected a real number");
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  }
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) parse_error("matrix must be an array of [re, im] pairs");
  if (j.size() != rows * cols) {
    parse_error("matrix has " + std::to_string(j.size()) + " entries, expected " + std::to_string(rows * cols));
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& e = j[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      parse_error("matrix entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) =
        Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

Json to_json(const LabeledState& s) {
  Json layout = Json::array();
  for (const auto& p : s.layout().parts()) layout.push_back({{"label", p.label}, {"dim", p.dim}});
  return {{"layout", layout}, {"matrix", matrix_to_json(s.matrix())}};
}

LabeledState state_from_json(const Json& j) {
  auto layout = layout_from_json(field(j, "layout"));
  const std::size_t d = layout.total_dim();
  auto m = matrix_from_json(field(j, "matrix"), d, d);
  const auto diag = diagnose_state(m);
  if (!diag.valid()) {
    std::ostringstream msg;
    msg << "not a density matrix (max deviation " << diag.max_deviation() << ")";
    throw Error(ErrorKind::InvalidState, msg.str());
  }
  return LabeledState(std::move(layout), std::move(m));
}

Json to_json(const KrausChannel& c) {
  Json kraus = Json::array();
  for (const auto& k : c.kraus()) kraus.push_back(matrix_to_json(k));
  return {{"in_dim", c.in_dim()}, {"out_dim", c.out_dim()}, {"kraus", kraus}};
}

KrausChannel channel_from_json(const Json& j) {
  const std::size_t in = size_field(j, "in_dim");
  const std::size_t out = size_field(j, "out_dim");
  const auto& list = field(j, "kraus");
  if (!list.is_array() || list.empty()) parse_error("kraus must be a nonempty array");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : list) kraus.push_back(matrix_from_json(k, out, in));
  KrausChannel c(in, out, std::move(kraus));
  const auto v = validate_channel(c);
  if (!v.valid) {
    std::ostringstream msg;
    msg << "Kraus operators are not trace preserving (max deviation " << v.max_deviation << ")";
    throw Error(ErrorKind::InvalidChannel, msg.str());
  }
  return c;
}

Json to_json(const Ensemble& e) {
  Json states = Json::array();
  for (const auto& s : e.states()) states.push_back(to_json(s));
  return {{"weights", real_vector_to_json(e.weights())}, {"states", states}};
}

Ensemble ensemble_from_json(const Json& j) {
  auto weights = real_vector_from_json(field(j, "weights"));
  const auto& list = field(j, "states");
  if (!list.is_array()) parse_error("states must be an array");
  std::vector<LabeledState> states;
  for (const auto& s : list) states.push_back(state_from_json(s));
  return Ensemble(std::move(weights), std::move(states));
}

Json to_json(const QBNet& net) {
  Json nodes = Json::array();
  for (const auto& n : net.nodes()) {
    Json node = {{"label", n.label},
                 {"dim", n.state_count},
                 {"parents", n.parents},
                 {"amplitudes", matrix_to_json(n.amplitudes)},
                 {"marking", std::string(to_string(n.marking))}};
    if (!n.parts.empty()) {
      Json parts = Json::array();
      for (const auto& p : n.parts) {
        parts.push_back({{"label", p.label}, {"dim", p.dim}, {"marking", std::string(to_string(p.marking))}});
      }
      node["parts"] = parts;
    }
    nodes.push_back(std::move(node));
  }
  return {{"nodes", nodes}};
}

QBNet net_from_json(const Json& j) {
  const auto& list = field(j, "nodes");
  if (!list.is_array()) parse_error("nodes must be an array");
  std::vector<Node> nodes;
  for (const auto& n : list) {
    Node node;
    node.label = string_field(n, "label");
    node.state_count = size_field(n, "dim");
    if (node.state_count == 0) parse_error("node '" + node.label + "' has dim 0");
    const auto& parents = field(n, "parents");
    if (!parents.is_array()) parse_error("parents must be an array");
    for (const auto& p : parents) {
      if (!p.is_string()) parse_error("parent labels must be strings");
      node.parents.push_back(p.get<std::string>());
    }
    const auto& amps = field(n, "amplitudes");
    if (!amps.is_array() || amps.size() % node.state_count != 0) {
      parse_error("amplitudes of '" + node.label + "' do not fill whole rows");
    }
    node.amplitudes = matrix_from_json(amps, node.state_count, amps.size() / node.state_count);
    try {
      node.marking = n.contains("marking") ? parse_marking(string_field(n, "marking")) : Marking::Visible;
      if (n.contains("parts")) {
        for (const auto& p : field(n, "parts")) {
          node.parts.push_back({string_field(p, "label"), size_field(p, "dim"),
                                p.contains("marking") ? parse_marking(string_field(p, "marking")) : Marking::Visible});
        }
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse) throw;
      parse_error(e.what());
    }
    nodes.push_back(std::move(node));
  }
  return QBNet(std::move(nodes));
}

Json to_json(const CheckVerdict& v) {
  return {{"id", v.id},
          {"relation", v.relation},
          {"lhs", real_to_json(v.lhs)},
          {"rhs", real_to_json(v.rhs)},
          {"margin", real_to_json(v.margin)},
          {"holds", v.holds},
          {"identity", v.identity},
          {"seed", v.seed},
          {"dims", dims_to_json(v.dims)}};
}

CheckVerdict verdict_from_json(const Json& j) {
  CheckVerdict v;
  v.id = string_field(j, "id");
  if (j.contains("relation")) v.relation = string_field(j, "relation");
  v.lhs = real_from_json(field(j, "lhs"));
  v.rhs = real_from_json(field(j, "rhs"));
  v.margin = real_from_json(field(j, "margin"));
  const auto& holds = field(j, "holds");
  if (!holds.is_boolean()) parse_error("holds must be a boolean");
  v.holds = holds.get<bool>();
  v.identity = j.contains("identity") && j["identity"].is_boolean() && j["identity"].get<bool>();
  const auto& seed = field(j, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    parse_error("seed must be a non-negative integer");
  }
  v.seed = seed.get<std::uint64_t>();
  const auto& dims = field(j, "dims");
  if (!dims.is_array()) parse_error("dims must be an array");
  for (const auto& d : dims) v.dims.push_back(d.get<std::size_t>());
  return v;
}

Json to_json(const BatchResult& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
  return {{"id", std::string(to_string(r.id))},
          {"trials", r.trials},
          {"passed", r.passed},
          {"min_margin", real_to_json(r.min_margin)},
          {"verdicts", verdicts}};
}

Json to_json(const RumSuite& s, const std::vector<double>& table) {
  Json subsets = Json::array();
  for (std::size_t mask = 1; mask < table.size(); ++mask) {
    Json members = Json::array();
    for (std::size_t j = 0; j < s.n; ++j) {
      if (mask & (std::size_t{1} << j)) members.push_back(j + 1);
    }
    subsets.push_back({{"subset", members}, {"value", table[mask]}});
  }
  Json verdicts = Json::array();
  for (const auto& v : s.verdicts) verdicts.push_back(to_json(v));
  return {{"n", s.n},
          {"subsets", subsets},
          {"complement_checks", s.complement_checks},
          {"triangle_checks", s.triangle_checks},
          {"negative_conditionals", s.negative_conditionals},
          {"failures", s.failures},
          {"all_hold", s.all_hold()},
          {"verdicts", verdicts}};
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace qbnets::io
