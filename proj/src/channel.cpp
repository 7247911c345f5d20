#include "pingpong/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pingpong {

namespace {

Eigen::Index isqrt_exact(Eigen::Index n, const char* what) {
  const auto root = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (root * root != n) {
    throw std::invalid_argument(std::string(what) + ": dimension is not a perfect square");
  }
  return root;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, double tol)
    : operators_(std::move(operators)) {
  if (operators_.empty()) {
    throw std::invalid_argument("KrausChannel: operator list is empty");
  }
  dim_ = operators_.front().rows();
  for (const auto& k : operators_) {
    if (k.rows() != dim_ || k.cols() != dim_) {
      throw std::invalid_argument("KrausChannel: operators must be square with equal dimension");
    }
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : operators_) {
    sum += k.adjoint() * k;
  }
  const double deviation = (sum - ComplexMatrix::Identity(dim_, dim_)).norm();
  if (deviation > tol) {
    std::ostringstream msg;
    msg << "KrausChannel: operators violate trace preservation, ||sum K^dag K - I|| = "
        << deviation;
    throw std::runtime_error(msg.str());
  }
}

Supermatrix::Supermatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw std::invalid_argument("Supermatrix: matrix must be square");
  }
  dim_ = isqrt_exact(m_.rows(), "Supermatrix");
}

DynamicalMatrix::DynamicalMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw std::invalid_argument("DynamicalMatrix: matrix must be square");
  }
  dim_ = isqrt_exact(m_.rows(), "DynamicalMatrix");
  if (!is_hermitian(m_, tol)) {
    throw std::runtime_error("DynamicalMatrix: matrix is not Hermitian within tolerance");
  }
}

ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.dim() || rho.cols() != ch.dim()) {
    throw std::invalid_argument("apply_kraus: state dimension does not match channel");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& k : ch.operators()) {
    out += k * rho * k.adjoint();
  }
  return out;
}

ComplexMatrix apply_supermatrix(const Supermatrix& sm, const ComplexMatrix& rho) {
  if (rho.rows() != sm.dim() || rho.cols() != sm.dim()) {
    throw std::invalid_argument("apply_supermatrix: state dimension does not match supermatrix");
  }
  return unres(sm.matrix() * res(rho), sm.dim(), sm.dim());
}

Supermatrix kraus_to_supermatrix(const KrausChannel& ch) {
  const Eigen::Index d2 = ch.dim() * ch.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d2, d2);
  for (const auto& k : ch.operators()) {
    m += kron(k, k.conjugate());
  }
  return Supermatrix(std::move(m));
}

namespace {

// D[(k1,k2),(l1,l2)] = M[(k1,l1),(k2,l2)]; an involution on d^2 x d^2.
ComplexMatrix reshuffle_square(const ComplexMatrix& m, Eigen::Index d) {
  ComplexMatrix out(d * d, d * d);
  for (Eigen::Index k1 = 0; k1 < d; ++k1) {
    for (Eigen::Index k2 = 0; k2 < d; ++k2) {
      for (Eigen::Index l1 = 0; l1 < d; ++l1) {
        for (Eigen::Index l2 = 0; l2 < d; ++l2) {
          out(k1 * d + k2, l1 * d + l2) = m(k1 * d + l1, k2 * d + l2);
        }
      }
    }
  }
  return out;
}

}  // namespace

DynamicalMatrix supermatrix_to_dynamical(const Supermatrix& sm) {
  return DynamicalMatrix(reshuffle_square(sm.matrix(), sm.dim()));
}

Supermatrix dynamical_to_supermatrix(const DynamicalMatrix& dm) {
  return Supermatrix(reshuffle_square(dm.matrix(), dm.dim()));
}

KrausChannel dynamical_to_kraus(const DynamicalMatrix& dm, double tol) {
  const auto eig = hermitian_eig(dm.matrix(), tol);
  const Eigen::Index d = dm.dim();

  std::vector<ComplexMatrix> operators;
  // Descending eigenvalue order; numerically null operators dropped.
  for (Eigen::Index i = eig.values.size(); i-- > 0;) {
    const double lambda = eig.values(i);
    if (lambda < -tol) {
      throw std::runtime_error(
          "dynamical_to_kraus: negative eigenvalue " + std::to_string(lambda) +
          "; the map is not completely positive");
    }
    if (lambda < kraus_rank_tol) {
      continue;
    }
    operators.push_back(std::sqrt(lambda) * unres(eig.vectors.col(i), d, d));
  }
  return KrausChannel(std::move(operators));
}

ComplexMatrix reshuffle_matrix(Eigen::Index dim_b, Eigen::Index dim_a) {
  if (dim_b <= 0 || dim_a <= 0) {
    throw std::invalid_argument("reshuffle_matrix: dimensions must be positive");
  }
  const Eigen::Index n = dim_b * dim_b * dim_a * dim_a;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index ib = 0; ib < dim_b; ++ib) {
    for (Eigen::Index jb = 0; jb < dim_b; ++jb) {
      for (Eigen::Index ia = 0; ia < dim_a; ++ia) {
        for (Eigen::Index ja = 0; ja < dim_a; ++ja) {
          // Composite ordering (ib, ia, jb, ja) versus product-of-res
          // ordering (ib, jb, ia, ja).
          const Eigen::Index row = ((ib * dim_a + ia) * dim_b + jb) * dim_a + ja;
          const Eigen::Index col = ((ib * dim_b + jb) * dim_a + ia) * dim_a + ja;
          m(row, col) = 1.0;
        }
      }
    }
  }
  return m;
}

Supermatrix extend_channel(const Supermatrix& ch_b, const Supermatrix& ch_a) {
  const ComplexMatrix mr = reshuffle_matrix(ch_b.dim(), ch_a.dim());
  return Supermatrix(mr * kron(ch_b.matrix(), ch_a.matrix()) * mr.transpose());
}

Supermatrix identity_supermatrix(Eigen::Index dim) {
  return Supermatrix(ComplexMatrix::Identity(dim * dim, dim * dim));
}

ComplexMatrix depolarize_composite(const ComplexMatrix& rho, double r) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("depolarize_composite: expected a 4x4 two-qubit state");
  }
  if (r < 0.0 || r > 1.0) {
    throw std::invalid_argument("depolarize_composite: reliability must lie in [0, 1]");
  }
  const SubsystemLayout layout{{"B", 2}, {"A", 2}};
  const ComplexMatrix reduced = partial_trace(rho, layout, {"B"});
  return r * rho + 0.5 * (1.0 - r) * kron(reduced, ComplexMatrix::Identity(2, 2));
}

KrausChannel identity_channel(Eigen::Index dim) {
  return KrausChannel({ComplexMatrix::Identity(dim, dim)});
}

KrausChannel depolarizing_channel(double r) {
  if (r < 0.0 || r > 1.0) {
    throw std::invalid_argument("depolarizing_channel: reliability must lie in [0, 1]");
  }
  // r rho + (1-r)/4 sum_k sigma_k rho sigma_k, with the two identity terms
  // merged into a single operator.
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::sqrt((1.0 + 3.0 * r) / 4.0) * ComplexMatrix::Identity(2, 2));
  const double w = std::sqrt((1.0 - r) / 4.0);
  ops.push_back(w * sigma_x());
  ops.push_back(w * sigma_y());
  ops.push_back(w * sigma_z());
  return KrausChannel(std::move(ops));
}

NoiseModel::NoiseModel(Kind kind, double r, KrausChannel ch)
    : kind_(kind), r_(r), channel_(std::move(ch)) {}

NoiseModel NoiseModel::identity() {
  return NoiseModel(Kind::identity, 1.0, identity_channel(2));
}

NoiseModel NoiseModel::depolarizing(double r) {
  return NoiseModel(Kind::depolarizing, r, depolarizing_channel(r));
}

NoiseModel NoiseModel::custom(KrausChannel ch) {
  return NoiseModel(Kind::custom, 1.0, std::move(ch));
}

double NoiseModel::reliability() const {
  if (kind_ != Kind::depolarizing) {
    throw std::logic_error("NoiseModel: reliability is defined for the depolarizing kind only");
  }
  return r_;
}

}  // namespace pingpong
