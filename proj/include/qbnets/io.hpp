#pragma once

#include <string>

#include <json.hpp>

#include "qbnets/channels.hpp"
#include "qbnets/entropy.hpp"
#include "qbnets/inequalities.hpp"
#include "qbnets/netmodel.hpp"
#include "qbnets/rum.hpp"

namespace qbnets::io {

using Json = nlohmann::ordered_json;

/// Version tag written into every report.
inline constexpr const char* kReportSchema = "qbnets.report/1";

// Matrices are flat row-major lists of [re, im] pairs; the shape comes from
// the surrounding object. Infinite reals are written as "inf" / "-inf".

Json real_to_json(double x);
double real_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

/// {layout: [{label, dim}], matrix}.
Json to_json(const LabeledState& s);
/// Throws Parse on malformed input and InvalidState (with the maximum
/// deviation in the message) when the matrix is not a density matrix.
LabeledState state_from_json(const Json& j);

/// {in_dim, out_dim, kraus: [matrix]}.
Json to_json(const KrausChannel& c);
KrausChannel channel_from_json(const Json& j);

/// {weights, states: [state]}.
Json to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& j);

/// {nodes: [{label, dim, parents, amplitudes, marking, parts?}]} with
/// amplitudes own-state major.
Json to_json(const QBNet& net);
QBNet net_from_json(const Json& j);

/// {id, relation, lhs, rhs, margin, holds, seed, dims}.
Json to_json(const CheckVerdict& v);
CheckVerdict verdict_from_json(const Json& j);

Json to_json(const BatchResult& r);
Json to_json(const RumSuite& s, const std::vector<double>& table);

/// Throws Parse if the file is missing or not JSON.
Json read_file(const std::string& path);

}  // namespace qbnets::io
