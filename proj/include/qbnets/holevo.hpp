#pragma once

#include <vector>

#include "qbnets/channels.hpp"
#include "qbnets/entropy.hpp"
#include "qbnets/netmodel.hpp"
#include "qbnets/randgen.hpp"
#include "qbnets/verdict.hpp"

namespace qbnets {

/// An ensemble {P(x), ρ_{q|x}} together with a measurement channel {K_y}
/// acting on q. Ensemble states are treated as one system q of their total
/// dimension.
struct HolevoInstance {
  Ensemble ensemble;
  KrausChannel channel;
};

/// Net x → Q, (Q,x) → q with A(x)=√P(x), A(Q|x)=√λ_{Q|x}, A(q|Q,x)=⟨q|λ_{Q|x}⟩.
QBNet purification_net(const Ensemble& e, bool classical_x = true);

/// State on (q, Q, x). Pure when x is left visible; tracing (Q, x) gives
/// E_x ρ_{q|x}.
LabeledState build_purification(const Ensemble& e, bool classical_x = true);

/// The purification net extended by the Stinespring unitary of the channel:
/// q1 and the ancilla y1 (clamped to 0) are slashed, Q is traced and the
/// unitary's output is split into q2 and y2.
QBNet measurement_net(const HolevoInstance& inst);

/// R on (q2, y2, x), with x classical.
LabeledState measured_state(const HolevoInstance& inst);

/// S(y2 : x_cl) evaluated on measured_state().
double measured_information(const Ensemble& e, const KrausChannel& measurement);

struct AccessibleInfo {
  double best = 0.0;
  std::size_t best_index = 0;
  KrausChannel best_channel = KrausChannel::identity(1);
  /// Index 0 is the computational-basis measurement; index s ≥ 1 the s-th
  /// Haar-rotated projective measurement.
  std::vector<double> per_sample;
};

/// Maximum of S(y2 : x_cl) over the computational-basis measurement and
/// `samples` random projective measurements; a lower bound on Acc.
AccessibleInfo accessible_info_lower_bound(const Ensemble& e, std::size_t samples, Seed seed);

/// Random projective measurement for sample index s ≥ 1 of `seed`; s = 0
/// gives the computational basis.
KrausChannel sampled_measurement(std::size_t dim, Seed seed, std::size_t s);

struct HolevoBoundReport {
  CheckVerdict verdict;  // lhs = best accessible value, rhs = Hol
  double holevo = 0.0;
  AccessibleInfo accessible;
  /// Samples with S(y2 : x_cl) > Hol + tolerance.
  std::size_t violations = 0;
};

HolevoBoundReport check_holevo_bound(const Ensemble& e, std::size_t samples, Seed seed);

}  // namespace qbnets
