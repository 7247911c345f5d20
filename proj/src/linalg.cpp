#include "pingpong/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace pingpong {

namespace {

// Mixed-radix index arithmetic over an ordered factor list.
std::vector<Eigen::Index> strides_of(const std::vector<Eigen::Index>& dims) {
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * dims[i];
  }
  return strides;
}

std::vector<Eigen::Index> digits_of(Eigen::Index flat,
                                    const std::vector<Eigen::Index>& dims) {
  std::vector<Eigen::Index> digits(dims.size(), 0);
  for (std::size_t i = dims.size(); i-- > 0;) {
    digits[i] = flat % dims[i];
    flat /= dims[i];
  }
  return digits;
}

}  // namespace

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix sigma_y() {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  m << 0, -i, i, 0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return false;
  }
  return ((a - b).cwiseAbs().maxCoeff() <= tol);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SubsystemLayout::SubsystemLayout(std::initializer_list<SubsystemFactor> factors)
    : SubsystemLayout(std::vector<SubsystemFactor>(factors)) {}

SubsystemLayout::SubsystemLayout(std::vector<SubsystemFactor> factors)
    : factors_(std::move(factors)) {
  std::unordered_set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim <= 0) {
      throw std::invalid_argument("subsystem '" + f.label +
                                  "' has non-positive dimension");
    }
    if (!seen.insert(f.label).second) {
      throw std::invalid_argument("duplicate subsystem label '" + f.label + "'");
    }
  }
}

Eigen::Index SubsystemLayout::total_dim() const {
  Eigen::Index d = 1;
  for (const auto& f : factors_) {
    d *= f.dim;
  }
  return d;
}

bool SubsystemLayout::has(std::string_view label) const {
  for (const auto& f : factors_) {
    if (f.label == label) {
      return true;
    }
  }
  return false;
}

Eigen::Index SubsystemLayout::dim_of(std::string_view label) const {
  for (const auto& f : factors_) {
    if (f.label == label) {
      return f.dim;
    }
  }
  throw std::invalid_argument("unknown subsystem label '" + std::string(label) + "'");
}

SubsystemLayout SubsystemLayout::keeping(const std::vector<std::string>& labels) const {
  for (const auto& l : labels) {
    if (!has(l)) {
      throw std::invalid_argument("unknown subsystem label '" + l + "'");
    }
  }
  std::vector<SubsystemFactor> kept;
  for (const auto& f : factors_) {
    if (std::find(labels.begin(), labels.end(), f.label) != labels.end()) {
      kept.push_back(f);
    }
  }
  return SubsystemLayout(std::move(kept));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            const std::vector<std::string>& keep) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("partial_trace: matrix must be square");
  }
  if (m.rows() != layout.total_dim()) {
    throw std::invalid_argument("partial_trace: matrix dimension does not match layout");
  }
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set must be nonempty");
  }

  const auto& factors = layout.factors();
  std::vector<bool> kept(factors.size(), false);
  for (const auto& label : keep) {
    bool found = false;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].label == label) {
        kept[i] = true;
        found = true;
      }
    }
    if (!found) {
      throw std::invalid_argument("partial_trace: unknown subsystem label '" + label + "'");
    }
  }

  std::vector<Eigen::Index> dims;
  for (const auto& f : factors) {
    dims.push_back(f.dim);
  }
  const auto in_strides = strides_of(dims);

  std::vector<Eigen::Index> keep_dims, trace_dims;
  std::vector<std::size_t> keep_pos, trace_pos;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (kept[i]) {
      keep_dims.push_back(dims[i]);
      keep_pos.push_back(i);
    } else {
      trace_dims.push_back(dims[i]);
      trace_pos.push_back(i);
    }
  }

  Eigen::Index out_dim = 1;
  for (auto d : keep_dims) {
    out_dim *= d;
  }
  Eigen::Index trace_dim = 1;
  for (auto d : trace_dims) {
    trace_dim *= d;
  }

  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index row = 0; row < out_dim; ++row) {
    const auto row_digits = digits_of(row, keep_dims);
    for (Eigen::Index col = 0; col < out_dim; ++col) {
      const auto col_digits = digits_of(col, keep_dims);
      Complex sum = 0;
      for (Eigen::Index t = 0; t < trace_dim; ++t) {
        const auto t_digits = digits_of(t, trace_dims);
        Eigen::Index in_row = 0, in_col = 0;
        for (std::size_t k = 0; k < keep_pos.size(); ++k) {
          in_row += row_digits[k] * in_strides[keep_pos[k]];
          in_col += col_digits[k] * in_strides[keep_pos[k]];
        }
        for (std::size_t k = 0; k < trace_pos.size(); ++k) {
          in_row += t_digits[k] * in_strides[trace_pos[k]];
          in_col += t_digits[k] * in_strides[trace_pos[k]];
        }
        sum += m(in_row, in_col);
      }
      out(row, col) = sum;
    }
  }
  return out;
}

ComplexVector res(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      v(k++) = m(i, j);
    }
  }
  return v;
}

ComplexMatrix unres(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw std::invalid_argument("unres: vector length does not match requested shape");
  }
  ComplexMatrix m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = v(k++);
    }
  }
  return m;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  return approx_equal(m, m.adjoint(), tol);
}

HermitianEig hermitian_eig(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) {
    throw std::invalid_argument("hermitian_eig: input is not Hermitian within tolerance");
  }
  // Symmetrize so rounding-level asymmetry cannot leak into the solver.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("trace_norm: matrix must be square");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol) {
  const auto eig = hermitian_eig(m, tol);
  Eigen::VectorXd roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double lambda = eig.values(i);
    if (lambda < -tol) {
      throw std::runtime_error("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                               " below -tolerance; input is not PSD");
    }
    roots(i) = std::sqrt(std::max(lambda, 0.0));
  }
  const ComplexMatrix s =
      eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
  return 0.5 * (s + s.adjoint());
}

bool is_density_matrix(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) {
    return false;
  }
  if (std::abs(m.trace() - Complex(1.0)) > tol) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) {
    return false;
  }
  return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace pingpong
