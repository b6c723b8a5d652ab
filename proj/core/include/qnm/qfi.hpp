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

#ifndef QNM_QFI_HPP_
#define QNM_QFI_HPP_

#include <limits>
#include <vector>

#include "qnm/hypergraph.hpp"
#include "qnm/state.hpp"

namespace qnm::metro {

// Quantum Fisher information matrix over a set of signal generators.
// Real symmetric, positive semi-definite.
struct QfiMatrix {
  Eigen::MatrixXd matrix;

  int size() const { return static_cast<int>(matrix.rows()); }
};

// The standard signal generators when none are given explicitly: signal s
// acts on every source qubit held by its vertices, with generator
//   H_s = scale * sum_{v in s} sum_{e : v in e} Z_[e,v],
// scale = 0.5 by default (phase convention e^{-i theta Z/2} per qubit).
// Throws TooLarge when a signal touches more than kMaxMixedQubits qubits.
std::vector<qcore::Observable> standard_generators(
    const netgraph::Hypergraph& g, const netgraph::SignalLayout& layout,
    double scale = 0.5);

// Quantum Fisher information matrix of theta -> e^{-i sum_s theta_s H_s}
// rho e^{+i ...} at theta = 0.
//
// For an eigendecomposition rho = sum_k lambda_k |k><k| the entries are
//   F_st = 2 sum_{k,l : lambda_k + lambda_l > eps}
//            (lambda_k - lambda_l)^2 / (lambda_k + lambda_l)
//            * Re(<k|H_s|l><l|H_t|k>),
// with rank cutoff eps = tolerances().qfi_rank_cutoff.  For a pure state
// this reduces to 4(Re<H_s H_t> - <H_s><H_t>).
QfiMatrix qfi_matrix(const qcore::LabeledState& rho,
                     const std::vector<qcore::Observable>& generators);

// Same computation, additionally returning the symmetric logarithmic
// derivatives L_s as full-register matrices (solving
// d rho/d theta_s = (L_s rho + rho L_s)/2).  Exposed for verification;
// forces the density-matrix path.
struct QfiWithSlds {
  QfiMatrix qfi;
  std::vector<qcore::Matrix> slds;
};
QfiWithSlds qfi_matrix_with_slds(
    const qcore::LabeledState& rho,
    const std::vector<qcore::Observable>& generators);

// Distinguished infinite bound: some weighted parameter is invisible
// (zero variance), so no finite mean-squared error bound exists.
inline constexpr double kInfiniteBound = std::numeric_limits<double>::infinity();

// Mean-squared-error lower bound for estimating theta(alpha) = sum_s
// alpha_s theta_s from nu repetitions on the given network state:
//   Delta^2 >= sum_s alpha_s^2 / (4 nu k_s Var(rho, H_s)).
// Terms with alpha_s = 0 contribute nothing.  Returns kInfiniteBound when
// some alpha_s != 0 has Var(rho, H_s) = 0.  Isolated signals fall back to
// k_s = 1 (see influence_or_isolated).
double mse_lower_bound(const netgraph::Hypergraph& g,
                       const netgraph::SignalLayout& layout,
                       const qcore::LabeledState& rho, int nu);

// The diagonal influence bound on the QFI matrix:
//   F_Q <= diag{ 4 k_s Var(rho, H_s) }.
QfiMatrix qfi_diag_bound(const netgraph::Hypergraph& g,
                         const netgraph::SignalLayout& layout,
                         const qcore::LabeledState& rho);

// Certificate for the diagonal bound against the exact QFI matrix.
struct BoundCertificate {
  bool holds = false;
  double gap_min_eig = 0.0;    // min eigenvalue of (diag bound - QFI)
  double qfi_trace = 0.0;
  std::vector<int> k_values;       // per-signal influence (after fallback)
  std::vector<bool> isolated;      // per-signal isolated-fallback flags
  std::vector<double> variances;   // per-signal Var(rho, H_s)
};

// Computes qfi_diag_bound - qfi_matrix and reports the minimum eigenvalue;
// holds iff it is >= tolerances().psd_gap.  Throws TooLarge beyond the
// mixed-state qubit cap.
BoundCertificate verify_qfi_bound(const netgraph::Hypergraph& g,
                                  const netgraph::SignalLayout& layout,
                                  const qcore::LabeledState& rho);

// Matrix Cramer-Rao combination bound (1/nu) alpha^T F^{-1} alpha.
// A singular QFI matrix is pseudo-inverted and flagged.
struct MatrixCrbResult {
  double value = 0.0;
  bool used_pseudo_inverse = false;
};
MatrixCrbResult matrix_crb(const QfiMatrix& qfi, int nu,
                           const std::vector<double>& alpha);

}  // namespace qnm::metro

#endif  // QNM_QFI_HPP_
