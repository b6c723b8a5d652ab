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

#ifndef QNM_COVARIANCE_HPP_
#define QNM_COVARIANCE_HPP_

#include <vector>

#include "qnm/state.hpp"

namespace qnm::metro {

// Hermitian covariance matrix of a set of observables:
//   C_ij = tr(A_i A_j rho) - tr(A_i rho) tr(A_j rho).
struct CovMatrix {
  qcore::Matrix matrix;

  int size() const { return static_cast<int>(matrix.rows()); }
};

CovMatrix cov_matrix(const qcore::LabeledState& rho,
                     const std::vector<qcore::Observable>& observables);

// Additive split of the covariance matrix across the subsystems of a
// product state: Cov = sum_k Upsilon^{(k)}, each Upsilon^{(k)} Hermitian
// PSD, with Upsilon^{(k)}_{ij} = 0 whenever A_i or A_j acts trivially on
// subsystem k.
struct CovDecomposition {
  std::vector<qcore::Matrix> parts;  // one per subsystem, in input order
  CovMatrix total;                   // covariance on the full product
};

// Builds the split by the telescoping recursion
//   Upsilon^{(k)}_{ij} = tr[(A_i^{(k-1)} - 1_k x A_i^{(k)})
//                           (A_j^{(k-1)} - 1_k x A_j^{(k)}) rho_{k->}],
//   A_i^{(k)} = tr_{<=k}(A_i rho_{<=k}),   A_i^{(0)} = A_i,
// where subsystem k ranges over the product factors in input order.
//
// `subsystems` are the product factors (pure or mixed), with disjoint
// registers; observables live on the combined register.  Throws
// NotProductInput on structural violations (empty list, register overlap).
CovDecomposition cov_decompose(
    const std::vector<qcore::LabeledState>& subsystems,
    const std::vector<qcore::Observable>& observables);

}  // namespace qnm::metro

#endif  // QNM_COVARIANCE_HPP_
