#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pingpong {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Absolute tolerance used by default for Hermiticity/PSD checks and for
// tolerance-based matrix equality.
inline constexpr double default_tol = 1e-10;

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

/// Entrywise equality within an absolute tolerance. Shapes must match.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct SubsystemFactor {
  std::string label;
  Eigen::Index dim = 0;

  bool operator==(const SubsystemFactor&) const = default;
};

// Ordered tensor factorization of a Hilbert space. Labels are unique and the
// product of the factor dimensions equals the dimension of any matrix the
// layout annotates.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::initializer_list<SubsystemFactor> factors);
  explicit SubsystemLayout(std::vector<SubsystemFactor> factors);

  const std::vector<SubsystemFactor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  Eigen::Index total_dim() const;
  bool has(std::string_view label) const;
  Eigen::Index dim_of(std::string_view label) const;

  /// Layout restricted to the given labels, keeping the original order.
  SubsystemLayout keeping(const std::vector<std::string>& labels) const;

  bool operator==(const SubsystemLayout&) const = default;

 private:
  std::vector<SubsystemFactor> factors_;
};

/// Trace out every factor not named in `keep`. The result is indexed by the
/// kept factors in their original order; the trace is preserved.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            const std::vector<std::string>& keep);

/// Row-wise reshape of a matrix into a column vector.
ComplexVector res(const ComplexMatrix& m);

/// Inverse of res for the given shape.
ComplexMatrix unres(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

struct HermitianEig {
  Eigen::VectorXd values;   // ascending
  ComplexMatrix vectors;    // orthonormal columns, matching order
};

/// Eigendecomposition of a Hermitian matrix. The input must be Hermitian
/// within `tol`.
HermitianEig hermitian_eig(const ComplexMatrix& m, double tol = default_tol);

/// Sum of singular values. Equals the sum of absolute eigenvalues for
/// Hermitian input.
double trace_norm(const ComplexMatrix& m);

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clipped to zero;
/// anything more negative is an error.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol = default_tol);

bool is_hermitian(const ComplexMatrix& m, double tol = default_tol);

/// Hermitian, positive semidefinite and unit trace, all within `tol`.
bool is_density_matrix(const ComplexMatrix& m, double tol = default_tol);

}  // namespace pingpong
