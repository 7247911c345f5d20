#include "pingpong/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pingpong {

namespace {

void require_same_dims(const ComplexMatrix& rho0, const ComplexMatrix& rho1, const char* op) {
  if (rho0.rows() != rho0.cols() || rho1.rows() != rho1.cols() ||
      rho0.rows() != rho1.rows()) {
    throw std::invalid_argument(std::string(op) + ": states must be square and equally sized");
  }
}

// PSD square root with eigenvalues below 1e-12 zeroed, so that the noise
// floor of an exactly singular state does not survive the square root.
ComplexMatrix rank_clipped_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  Eigen::VectorXd roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    roots(i) = eig.values(i) < 1e-12 ? 0.0 : std::sqrt(eig.values(i));
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

double trace_distance(const ComplexMatrix& rho0, const ComplexMatrix& rho1) {
  require_same_dims(rho0, rho1, "trace_distance");
  return trace_norm(rho0 - rho1);
}

double fidelity(const ComplexMatrix& rho0, const ComplexMatrix& rho1) {
  require_same_dims(rho0, rho1, "fidelity");
  // tr sqrt(sqrt(rho0) rho1 sqrt(rho0)) == || sqrt(rho0) sqrt(rho1) ||_1
  const double f = trace_norm(rank_clipped_sqrt(rho0) * rank_clipped_sqrt(rho1));
  return std::clamp(f, 0.0, 1.0);
}

double min_error_probability(const ComplexMatrix& rho0, const ComplexMatrix& rho1) {
  require_same_dims(rho0, rho1, "min_error_probability");
  const double p = 0.5 * (1.0 - 0.5 * trace_distance(rho0, rho1));
  return std::clamp(p, 0.0, 0.5);
}

double unambiguous_failure(const ComplexMatrix& rho0, const ComplexMatrix& rho1) {
  require_same_dims(rho0, rho1, "unambiguous_failure");
  return fidelity(rho0, rho1);
}

DiscriminationResult discriminate(const ComplexMatrix& rho0, const ComplexMatrix& rho1) {
  DiscriminationResult result;
  result.trace_distance = trace_distance(rho0, rho1);
  result.fidelity = fidelity(rho0, rho1);
  result.qber = std::clamp(0.5 * (1.0 - 0.5 * result.trace_distance), 0.0, 0.5);
  result.qloss = result.fidelity;
  return result;
}

}  // namespace pingpong
