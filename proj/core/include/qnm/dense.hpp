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

#ifndef QNM_DENSE_HPP_
#define QNM_DENSE_HPP_

#include <complex>

#include <Eigen/Dense>

namespace qnm::qcore {

using cdouble = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// Kronecker products with the left factor as the most significant index.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

bool is_hermitian(const Matrix& m, double tol);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& hermitian);

// Operator norm (largest |eigenvalue|) of a Hermitian matrix.
double operator_norm_hermitian(const Matrix& hermitian);

// exp(-i t H) for Hermitian H, via eigendecomposition.
Matrix expi_hermitian(const Matrix& hermitian, double t);

// Principal square root of a positive semi-definite Hermitian matrix
// (negative eigenvalues within round-off are clipped to zero).
Matrix sqrt_psd(const Matrix& psd);

// Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const Matrix& rho, const Matrix& sigma);

// Trace distance (1/2)||a - b||_1 for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

// Extends a matrix V with orthonormal columns to a full unitary whose first
// block of columns equals V exactly (Gram-Schmidt over basis vectors).
// Requires V.rows() >= V.cols() and V^dagger V = 1.
Matrix complete_to_unitary(const Matrix& isometry);

}  // namespace qnm::qcore

#endif  // QNM_DENSE_HPP_
