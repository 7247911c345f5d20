#pragma once

#include <vector>

#include "pingpong/linalg.hpp"

namespace pingpong {

// Eigenvalues of a dynamical matrix below this threshold are treated as
// numerically null and dropped during Kraus recovery.
inline constexpr double kraus_rank_tol = 1e-12;

/// Completely positive trace-preserving map as an operator list. Construction
/// verifies that all operators are square, share one dimension and satisfy
/// sum_k K_k^dag K_k = I within `tol`.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> operators, double tol = default_tol);

  Eigen::Index dim() const { return dim_; }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }

 private:
  std::vector<ComplexMatrix> operators_;
  Eigen::Index dim_ = 0;
};

/// d^2 x d^2 matrix acting on the row-wise vectorization of a state.
class Supermatrix {
 public:
  explicit Supermatrix(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return dim_; }

 private:
  ComplexMatrix m_;
  Eigen::Index dim_ = 0;
};

/// Index-reshuffled form of a supermatrix. Hermitian for the channels handled
/// here, PSD exactly when the channel is completely positive, trace equal to
/// the system dimension when it is trace preserving.
class DynamicalMatrix {
 public:
  explicit DynamicalMatrix(ComplexMatrix m, double tol = default_tol);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return dim_; }

 private:
  ComplexMatrix m_;
  Eigen::Index dim_ = 0;
};

/// rho -> sum_k K_k rho K_k^dag.
ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& rho);

/// Convenience: unres(M res(rho)).
ComplexMatrix apply_supermatrix(const Supermatrix& sm, const ComplexMatrix& rho);

/// Supermatrix M with res(apply_kraus(ch, rho)) == M res(rho); under the
/// row-wise res convention M = sum_k K_k (x) conj(K_k).
Supermatrix kraus_to_supermatrix(const KrausChannel& ch);

// The supermatrix <-> dynamical matrix relation is the self-inverse index
// reshuffle D[(k1,k2),(l1,l2)] = M[(k1,l1),(k2,l2)].
DynamicalMatrix supermatrix_to_dynamical(const Supermatrix& sm);
Supermatrix dynamical_to_supermatrix(const DynamicalMatrix& dm);

/// Kraus operators recovered by eigendecomposition: K_i = sqrt(lambda_i)
/// unres(v_i), ordered by descending eigenvalue, eigenvalues below
/// `kraus_rank_tol` dropped. Throws if an eigenvalue is below -tol (the map is
/// not completely positive).
KrausChannel dynamical_to_kraus(const DynamicalMatrix& dm, double tol = default_tol);

/// Permutation matrix mapping the tensor product of two subsystem
/// vectorizations onto the vectorization of the composite system, i.e.
/// M_R (res(a) (x) res(b)) = res(a (x) b). Self-inverse when dim_b == dim_a.
ComplexMatrix reshuffle_matrix(Eigen::Index dim_b, Eigen::Index dim_a);

/// Supermatrix of ch_b (x) ch_a on the composite system:
/// M_R (M_b (x) M_a) M_R^T.
Supermatrix extend_channel(const Supermatrix& ch_b, const Supermatrix& ch_a);

Supermatrix identity_supermatrix(Eigen::Index dim);

/// Closed form of the depolarizing channel on the second qubit of a two-qubit
/// state: r rho + (1-r)/2 tr_A(rho) (x) I.
ComplexMatrix depolarize_composite(const ComplexMatrix& rho, double r);

KrausChannel identity_channel(Eigen::Index dim);

/// Single-qubit depolarizing channel with reliability r in [0, 1].
KrausChannel depolarizing_channel(double r);

/// Noise configuration for the protocol legs: the identity channel, the
/// depolarizing channel with a given reliability, or a custom Kraus channel.
class NoiseModel {
 public:
  enum class Kind { identity, depolarizing, custom };

  static NoiseModel identity();
  static NoiseModel depolarizing(double r);
  static NoiseModel custom(KrausChannel ch);

  Kind kind() const { return kind_; }
  double reliability() const;  // depolarizing only
  const KrausChannel& channel() const { return channel_; }

 private:
  NoiseModel(Kind kind, double r, KrausChannel ch);

  Kind kind_;
  double r_;
  KrausChannel channel_;
};

}  // namespace pingpong
