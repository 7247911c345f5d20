#include "pingpong/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pingpong {

namespace {

void require_stage(const ProtocolState& s, int expected, const char* op) {
  if (s.stage != expected) {
    throw std::logic_error(std::string(op) + ": expected a stage-" +
                           std::to_string(expected) + " state, got stage " +
                           std::to_string(s.stage));
  }
}

Eigen::Index eve_dim_of(const ProtocolState& s) {
  return s.has_eve() ? s.layout.dim_of("E") : 1;
}

// Supermatrix of (N_BA (x) I_E) for the full joint system.
Supermatrix noise_supermatrix(const ProtocolState& s, const NoiseModel& noise) {
  if (noise.channel().dim() != s.layout.dim_of("A")) {
    throw std::invalid_argument("noise channel dimension does not match the signal qubit");
  }
  Supermatrix ba = extend_channel(identity_supermatrix(s.layout.dim_of("B")),
                                  kraus_to_supermatrix(noise.channel()));
  if (!s.has_eve()) {
    return ba;
  }
  return extend_channel(ba, identity_supermatrix(eve_dim_of(s)));
}

ProtocolState apply_leg_noise(const ProtocolState& s, const NoiseModel& noise, int next_stage) {
  ProtocolState out{apply_supermatrix(noise_supermatrix(s, noise), s.rho), s.layout, next_stage};
  return out;
}

// I_B (x) |x><x|_A (x) I_E
ComplexMatrix alice_projector(const ProtocolState& s, Eigen::Index x) {
  ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
  proj(x, x) = 1.0;
  ComplexMatrix m = kron(ComplexMatrix::Identity(2, 2), proj);
  if (s.has_eve()) {
    const Eigen::Index de = eve_dim_of(s);
    m = kron(m, ComplexMatrix::Identity(de, de));
  }
  return m;
}

// |y><y|_B (x) I_A (x) I_E
ComplexMatrix bob_projector(const ProtocolState& s, Eigen::Index y) {
  ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
  proj(y, y) = 1.0;
  ComplexMatrix m = kron(proj, ComplexMatrix::Identity(2, 2));
  if (s.has_eve()) {
    const Eigen::Index de = eve_dim_of(s);
    m = kron(m, ComplexMatrix::Identity(de, de));
  }
  return m;
}

ComplexMatrix lifted_eve_projector(const ProtocolState& s, const EveAction& action,
                                   std::size_t alpha) {
  if (action.kind() != EveAction::Kind::measure) {
    throw std::invalid_argument("expected a measuring Eve action");
  }
  if (!s.has_eve()) {
    throw std::invalid_argument("state has no Eve subsystem to measure");
  }
  if (alpha >= action.projectors().size()) {
    throw std::invalid_argument("measurement outcome index out of range");
  }
  const ComplexMatrix& proj = action.projectors()[alpha];
  if (proj.rows() != eve_dim_of(s)) {
    throw std::invalid_argument("projector dimension does not match Eve's system");
  }
  return kron(ComplexMatrix::Identity(4, 4), proj);
}

}  // namespace

EveAction EveAction::absent() { return EveAction(Kind::absent); }

EveAction EveAction::entangle(KrausChannel op) {
  EveAction action(Kind::entangle);
  action.entangler_ = std::move(op);
  return action;
}

EveAction EveAction::measure(std::vector<ComplexMatrix> projectors, double tol) {
  if (projectors.empty()) {
    throw std::invalid_argument("EveAction::measure: projector list is empty");
  }
  const Eigen::Index d = projectors.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& p : projectors) {
    if (p.rows() != d || p.cols() != d) {
      throw std::invalid_argument("EveAction::measure: projectors must be square with equal dimension");
    }
    if (!is_hermitian(p, tol)) {
      throw std::invalid_argument("EveAction::measure: projectors must be Hermitian");
    }
    sum += p;
  }
  if (!approx_equal(sum, ComplexMatrix::Identity(d, d), tol)) {
    throw std::invalid_argument("EveAction::measure: projectors do not sum to the identity");
  }
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    for (std::size_t b = 0; b < projectors.size(); ++b) {
      const ComplexMatrix expected = (a == b) ? projectors[a] : ComplexMatrix::Zero(d, d);
      if (!approx_equal(projectors[a] * projectors[b], expected, tol)) {
        throw std::invalid_argument("EveAction::measure: projectors are not orthogonal idempotents");
      }
    }
  }
  EveAction action(Kind::measure);
  action.projectors_ = std::move(projectors);
  return action;
}

const KrausChannel& EveAction::entangler() const {
  if (kind_ != Kind::entangle) {
    throw std::logic_error("EveAction: no entangling operator on this action");
  }
  return *entangler_;
}

const std::vector<ComplexMatrix>& EveAction::projectors() const {
  if (kind_ != Kind::measure) {
    throw std::logic_error("EveAction: no projectors on this action");
  }
  return projectors_;
}

ProtocolState initial_state(bool with_eve, Eigen::Index eve_dim, const ComplexVector& eve_state) {
  ComplexVector phi_plus = ComplexVector::Zero(4);
  phi_plus(0) = 1.0 / std::sqrt(2.0);
  phi_plus(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix rho_ba = phi_plus * phi_plus.adjoint();

  if (!with_eve) {
    return {rho_ba, SubsystemLayout{{"B", 2}, {"A", 2}}, 0};
  }

  if (eve_dim < 1) {
    throw std::invalid_argument("initial_state: Eve's dimension must be at least 1");
  }
  ComplexVector chi;
  if (eve_state.size() == 0) {
    chi = ComplexVector::Zero(eve_dim);
    chi(0) = 1.0;
  } else {
    if (eve_state.size() != eve_dim) {
      throw std::invalid_argument("initial_state: Eve state length does not match her dimension");
    }
    if (std::abs(eve_state.norm() - 1.0) > default_tol) {
      throw std::invalid_argument("initial_state: Eve state must be normalized");
    }
    chi = eve_state;
  }
  const ComplexMatrix rho = kron(rho_ba, chi * chi.adjoint());
  return {rho, SubsystemLayout{{"B", 2}, {"A", 2}, {"E", eve_dim}}, 0};
}

ProtocolState forward_leg(const ProtocolState& s, const NoiseModel& noise) {
  require_stage(s, 0, "forward_leg");
  return apply_leg_noise(s, noise, 1);
}

ProtocolState eve_intervene(const ProtocolState& s, const EveAction& action) {
  require_stage(s, 1, "eve_intervene");
  switch (action.kind()) {
    case EveAction::Kind::absent:
      return {s.rho, s.layout, 2};
    case EveAction::Kind::entangle: {
      if (!s.has_eve()) {
        throw std::invalid_argument("eve_intervene: entangling action needs an Eve subsystem");
      }
      const Eigen::Index dae = s.layout.dim_of("A") * eve_dim_of(s);
      if (action.entangler().dim() != dae) {
        throw std::invalid_argument("eve_intervene: entangling operator must act on A (x) E");
      }
      std::vector<ComplexMatrix> lifted;
      for (const auto& k : action.entangler().operators()) {
        lifted.push_back(kron(ComplexMatrix::Identity(2, 2), k));
      }
      return {apply_kraus(KrausChannel(std::move(lifted)), s.rho), s.layout, 2};
    }
    case EveAction::Kind::measure:
      throw std::invalid_argument("eve_intervene: measurement happens after encoding, not here");
  }
  throw std::logic_error("eve_intervene: unreachable");
}

double control_mode_error(const ProtocolState& s) {
  require_stage(s, 2, "control_mode_error");

  double error = 0.0;
  for (Eigen::Index x : {0, 1}) {
    const ComplexMatrix ma = alice_projector(s, x);
    const double p_a = (s.rho * ma).trace().real();
    if (p_a < conditioning_tol) {
      throw std::runtime_error("control_mode_error: Alice outcome " + std::to_string(x) +
                               " has vanishing probability");
    }
    const ComplexMatrix sigma = (ma * s.rho * ma) / p_a;
    const ComplexMatrix mb = bob_projector(s, 1 - x);
    const double p_mismatch = (sigma * mb).trace().real();
    error += p_mismatch * p_a;
  }
  return error;
}

ProtocolState encode(const ProtocolState& s, int mu) {
  require_stage(s, 2, "encode");
  if (mu != 0 && mu != 1) {
    throw std::invalid_argument("encode: message bit must be 0 or 1");
  }
  if (mu == 0) {
    return {s.rho, s.layout, 3};
  }
  ComplexMatrix z = kron(ComplexMatrix::Identity(2, 2), sigma_z());
  if (s.has_eve()) {
    const Eigen::Index de = eve_dim_of(s);
    z = kron(z, ComplexMatrix::Identity(de, de));
  }
  return {z * s.rho * z.adjoint(), s.layout, 3};
}

ProtocolState return_leg(const ProtocolState& s, const NoiseModel& noise) {
  require_stage(s, 3, "return_leg");
  return apply_leg_noise(s, noise, 4);
}

std::pair<ComplexMatrix, ComplexMatrix> bob_states(const ProtocolState& s0,
                                                   const ProtocolState& s1) {
  require_stage(s0, 4, "bob_states");
  require_stage(s1, 4, "bob_states");
  if (s0.layout != s1.layout) {
    throw std::invalid_argument("bob_states: states have different layouts");
  }
  return {partial_trace(s0.rho, s0.layout, {"B", "A"}),
          partial_trace(s1.rho, s1.layout, {"B", "A"})};
}

std::pair<ComplexMatrix, ComplexMatrix> eve_states(const ProtocolState& s0,
                                                   const ProtocolState& s1) {
  require_stage(s0, 3, "eve_states");
  require_stage(s1, 3, "eve_states");
  if (s0.layout != s1.layout) {
    throw std::invalid_argument("eve_states: states have different layouts");
  }
  const std::vector<std::string> keep =
      s0.has_eve() ? std::vector<std::string>{"A", "E"} : std::vector<std::string>{"A"};
  return {partial_trace(s0.rho, s0.layout, keep), partial_trace(s1.rho, s1.layout, keep)};
}

double eve_outcome_probability(const ProtocolState& s, const EveAction& action,
                               std::size_t alpha) {
  require_stage(s, 3, "eve_outcome_probability");
  const ComplexMatrix m = lifted_eve_projector(s, action, alpha);
  return (s.rho * m).trace().real();
}

ComplexMatrix eve_measured_state(const ProtocolState& s, const EveAction& action,
                                 std::size_t alpha, const NoiseModel& noise) {
  require_stage(s, 3, "eve_measured_state");
  const ComplexMatrix m = lifted_eve_projector(s, action, alpha);
  const double p = (s.rho * m).trace().real();
  if (p < conditioning_tol) {
    throw std::runtime_error("eve_measured_state: conditioning on an outcome of vanishing probability");
  }
  const ProtocolState collapsed{(m * s.rho * m) / p, s.layout, 3};
  const ProtocolState received = return_leg(collapsed, noise);
  return partial_trace(received.rho, received.layout, {"B", "A"});
}

}  // namespace pingpong
