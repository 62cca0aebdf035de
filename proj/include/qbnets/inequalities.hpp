#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbnets/channels.hpp"
#include "qbnets/entropy.hpp"
#include "qbnets/netmodel.hpp"
#include "qbnets/randgen.hpp"
#include "qbnets/verdict.hpp"

namespace qbnets {

enum class InequalityId {
  MiNonneg,
  CmiNonneg,
  ArakiLieb,
  CondBounds,
  UnitalMonotone,
  FunctionDecrease,
  EntropyMeasurement,
  EntropyPreparation,
  DpClassical,
  DpFunction,
  DpSingleGraph,
  DpMultigraph,
  CondOnClassical,
  CloneMerge,
  TrinodeCmiZero,
  IsometryTrace,
  HolevoIsMi,
  MreClassical,
  MreQuantum,
  HolevoBound,
};

struct InequalityInfo {
  InequalityId id;
  std::string_view name;
  /// Two-sided check (|lhs − rhs| ≤ tol) rather than lhs ≤ rhs.
  bool identity;
  std::string_view relation;
  std::string_view instance;
};

const std::vector<InequalityInfo>& inequality_registry();
const InequalityInfo& info(InequalityId id);
std::string_view to_string(InequalityId id);
/// Throws InvalidArgument for names not in the registry.
InequalityId parse_inequality_id(std::string_view name);

/// Channel acting on the first subsystem of `state`.
struct ChannelInstance {
  KrausChannel channel;
  LabeledState state;
};

/// Column-stochastic T(y|x) with input distribution p(x).
struct StochasticInstance {
  RealMatrix t;
  RealVector p;
};

/// Classical chain x0 → x1 → … with P(x_k | x_{k−1}) = links[k−1].
struct ClassicalChainInstance {
  RealVector root;
  std::vector<RealMatrix> links;
};

/// Net a → b → c with amplitudes A(a), A(b|a), A(c|b).
struct IsometryTraceInstance {
  ComplexVector root;
  ComplexMatrix b_given_a;
  ComplexMatrix c_given_b;
};

struct MreClassicalInstance {
  RealMatrix t;
  RealVector p;
  RealVector q;
};

struct MreQuantumInstance {
  KrausChannel channel;
  LabeledState rho;
  LabeledState sigma;
};

struct HolevoBoundInstance {
  Ensemble ensemble;
  std::size_t samples = 50;
  Seed seed = 0;
};

/// What each id accepts:
///  - LabeledState: mi_nonneg, araki_lieb, cond_bounds, entropy_measurement,
///    cond_on_classical (subsystems 0, 1 play b, a) and cmi_nonneg
///    (subsystems 0, 1, 2 play b, a, e).
///  - ChannelInstance: unital_monotone.
///  - StochasticInstance: function_decrease (t deterministic).
///  - ClassicalChainInstance: dp_classical (≥ 2 links), dp_function
///    (3 links a → x → f(x) → b, the middle one deterministic).
///  - Ensemble: entropy_preparation (pure states), clone_merge
///    ({P(a), ρ_{b|a}}), holevo_is_mi ({P(x), ρ_{q|x}}).
///  - ChainNetSpec: dp_single_graph (≥ 2 links), dp_multigraph (≥ 2 links).
///  - QBNet: trinode_cmi_zero (visible nodes a, b, e).
///  - IsometryTraceInstance: isometry_trace.
///  - MreClassicalInstance, MreQuantumInstance, HolevoBoundInstance.
using Instance = std::variant<LabeledState, ChannelInstance, StochasticInstance, ClassicalChainInstance, Ensemble,
                              ChainNetSpec, QBNet, IsometryTraceInstance, MreClassicalInstance, MreQuantumInstance,
                              HolevoBoundInstance>;

/// D(Tp//Tq) ≤ D(p//q). Throws InvalidChannel if t is not column-stochastic.
CheckVerdict check_mre_classical(const RealMatrix& t, const RealVector& p, const RealVector& q);

/// D(T(ρ)//T(σ)) ≤ D(ρ//σ), with the channel acting on the whole state.
CheckVerdict check_mre_quantum(const KrausChannel& c, const LabeledState& rho, const LabeledState& sigma);

/// Every sub-check of `id` on `instance`. Sub-checks of the claim itself
/// carry the registry name as id; supporting checks carry "<name>.<what>".
/// Throws ShapeMismatch if the instance kind does not fit the id.
std::vector<CheckVerdict> check_entropic_all(InequalityId id, const Instance& instance);

/// The binding sub-check: the worst failing one if any fails, otherwise the
/// worst of the claim's own sub-checks.
CheckVerdict check_entropic(InequalityId id, const Instance& instance);

/// Seeded random instance. `dims` lists per-subsystem dimensions; missing
/// entries default to 2.
Instance make_random_instance(InequalityId id, const std::vector<std::size_t>& dims, Seed seed);

struct BatchResult {
  InequalityId id;
  std::size_t trials = 0;
  std::size_t passed = 0;
  double min_margin = 0.0;
  std::vector<CheckVerdict> verdicts;  // one per trial, in trial order
};

/// Trial t uses seed derive_seed(base_seed, t).
BatchResult run_batch(InequalityId id, std::size_t trials, const std::vector<std::size_t>& dims, Seed base_seed);

/// Fixed states on which naive merge / conditional-independence identities
/// fail. Every returned verdict is expected not to hold:
///  - clone_quantum:  S(a,a′) = S(a) on (|00⟩+|11⟩)/√2.
///  - clone_pure:     S(b,a,a′) = S(b,a) on Σ_{a,b}|b⟩|a⟩|a⟩/2.
///  - clone_pure_marginal: S(b,a,a′) = S(a′) on the same state.
///  - collider_cmi:   H(a:b|e) = 0 with e = a XOR b for fair bits a, b.
std::vector<CheckVerdict> counterexample_suite();

}  // namespace qbnets
