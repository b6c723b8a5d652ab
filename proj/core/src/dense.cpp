// Copyright 2026 The qnm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnm/dense.hpp"

#include <algorithm>
#include <cmath>

#include "qnm/errors.hpp"

namespace qnm::qcore {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << cdouble(0, 0), cdouble(0, -1), cdouble(0, 1), cdouble(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Matrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double operator_norm_hermitian(const Matrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix expi_hermitian(const Matrix& hermitian, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  const auto& vals = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  Vector phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    phases(i) = std::exp(cdouble(0, -t * vals(i)));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

Matrix sqrt_psd(const Matrix& psd) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(psd);
  const auto& vals = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  Eigen::VectorXd roots(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    roots(i) = vals(i) > 0 ? std::sqrt(vals(i)) : 0.0;
  }
  return vecs * roots.asDiagonal() * vecs.adjoint();
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  const Matrix root = sqrt_psd(rho);
  const Matrix inner = root * sigma * root;
  Eigen::SelfAdjointEigenSolver<Matrix> solver((inner + inner.adjoint()) / 2.0,
                                               Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double v = solver.eigenvalues()(i);
    if (v > 0) sum += std::sqrt(v);
  }
  return sum * sum;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = (a - b + (a - b).adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Matrix complete_to_unitary(const Matrix& isometry) {
  const Eigen::Index rows = isometry.rows();
  const Eigen::Index cols = isometry.cols();
  if (cols > rows) {
    throw InvalidSize("isometry has more columns than rows");
  }
  const Matrix gram = isometry.adjoint() * isometry;
  if ((gram - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff() > 1e-9) {
    throw BadDistribution("columns are not orthonormal");
  }
  Matrix u(rows, rows);
  u.leftCols(cols) = isometry;
  Eigen::Index filled = cols;
  // Modified Gram-Schmidt over canonical basis vectors.
  for (Eigen::Index cand = 0; cand < rows && filled < rows; ++cand) {
    Vector v = Vector::Zero(rows);
    v(cand) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < filled; ++j) {
        v -= u.col(j).dot(v) * u.col(j);
      }
    }
    const double norm = v.norm();
    if (norm > 1e-6) {
      u.col(filled++) = v / norm;
    }
  }
  if (filled != rows) {
    throw Error("unitary completion failed to span the space");
  }
  return u;
}

}  // namespace qnm::qcore
