#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pingpong/channel.hpp"

namespace pingpong {

// Outcome probabilities below this threshold are treated as conditioning on
// an impossible event and raise an error.
inline constexpr double conditioning_tol = 1e-12;

/// Joint state of the protocol run, ordered Bob, Alice and (optionally) Eve,
/// tagged with the stage it has reached:
///   0 initial, 1 after the forward leg, 2 after Eve's intervention,
///   3 after encoding, 4 after the return leg.
/// Values are immutable; every operation returns a new state.
struct ProtocolState {
  ComplexMatrix rho;
  SubsystemLayout layout;
  int stage = 0;

  bool has_eve() const { return layout.has("E"); }
};

/// What Eve does while the signal qubit passes her: nothing, a channel
/// entangling the signal qubit with her system, or a projective measurement
/// of her system.
class EveAction {
 public:
  enum class Kind { absent, entangle, measure };

  static EveAction absent();
  /// `op` acts on the A (x) E factors; Bob's qubit is untouched.
  static EveAction entangle(KrausChannel op);
  /// Complete orthogonal projector set on Eve's system.
  static EveAction measure(std::vector<ComplexMatrix> projectors, double tol = default_tol);

  Kind kind() const { return kind_; }
  const KrausChannel& entangler() const;
  const std::vector<ComplexMatrix>& projectors() const;

 private:
  explicit EveAction(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::optional<KrausChannel> entangler_;
  std::vector<ComplexMatrix> projectors_;
};

/// Stage-0 state: the EPR pair shared by Bob and Alice, optionally extended
/// by Eve's pure state (first basis vector unless `eve_state` is given).
ProtocolState initial_state(bool with_eve = false, Eigen::Index eve_dim = 2,
                            const ComplexVector& eve_state = ComplexVector());

/// Bob -> Alice transmission: noise acts as I_B (x) N_A, identity on E.
ProtocolState forward_leg(const ProtocolState& s, const NoiseModel& noise);

/// Eve's action on the travelling qubit and her own system (stage 1 -> 2).
ProtocolState eve_intervene(const ProtocolState& s, const EveAction& action);

/// Probability that computational-basis measurements by Alice and then Bob
/// disagree (stage 2 state).
double control_mode_error(const ProtocolState& s);

/// Alice encodes bit mu by applying Z_A^mu (stage 2 -> 3).
ProtocolState encode(const ProtocolState& s, int mu);

/// Alice -> Bob transmission, same noise contract as the forward leg
/// (stage 3 -> 4).
ProtocolState return_leg(const ProtocolState& s, const NoiseModel& noise);

/// The pair of BA-reduced states Bob must discriminate (both stage 4).
std::pair<ComplexMatrix, ComplexMatrix> bob_states(const ProtocolState& s0,
                                                   const ProtocolState& s1);

/// The pair of states available to Eve: the reduction over B of the stage-3
/// states (the A (x) E factors, or just A when Eve is absent).
std::pair<ComplexMatrix, ComplexMatrix> eve_states(const ProtocolState& s0,
                                                   const ProtocolState& s1);

/// Probability of Eve's measurement outcome `alpha` on a stage-3 state.
double eve_outcome_probability(const ProtocolState& s, const EveAction& action,
                               std::size_t alpha);

/// The BA state Bob receives when Eve measured outcome `alpha` on a stage-3
/// state: collapse, renormalize, apply return-leg noise, trace out E.
ComplexMatrix eve_measured_state(const ProtocolState& s, const EveAction& action,
                                 std::size_t alpha, const NoiseModel& noise);

}  // namespace pingpong
