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

#ifndef QNM_TMATRIX_HPP_
#define QNM_TMATRIX_HPP_

#include <vector>

#include "qnm/covariance.hpp"
#include "qnm/network_state.hpp"
#include "qnm/qfi.hpp"

namespace qnm::metro {

// Per-hyperedge certificate matrices for the influence bound.  For each
// hyperedge e, T^{(e)} is an S x S Hermitian PSD matrix supported on the
// signals touching e, and together they satisfy
//   (1)  sum_e T^{(e)} >= F_Q / 4            (PSD difference),
//   (2)  sum_e T^{(e)}_{ss} = Var(rho, H_s)  (diagonal sum rule),
//   (3)  Pi^{(e)} T^{(e)} Pi^{(e)} = T^{(e)},  T^{(e)} >= 0,
// where Pi^{(e)} projects onto the signal indices whose vertex sets touch e.
struct TDecomposition {
  std::vector<qcore::Matrix> parts;        // one per hyperedge, edge order
  std::vector<std::vector<int>> blocks;    // per edge: signal indices touching it
};

// Constructs the certificate from an explicitly constructible network state
// (sources plus per-vertex Kraus channels): each channel is dilated to a
// unitary with a fresh |0...0> ancilla register, the generators are lifted
// through the dilation, the covariance of the lifted generators is split
// across the product factors (sources and ancillas) via cov_decompose, and
// each vertex ancilla's part is distributed over the vertex's incident
// edges in equal 1/c_v shares:
//   T^{(e)} = Upsilon^{(e)} + sum_{v in e} Upsilon^{(v)} / c_v.
//
// `layout.generators` may be empty (the standard Z-type generators are
// used) or must give one observable per signal, supported within the
// signal's own source qubits.  Throws NotNetworkForm on structural
// violations; TooLarge if the dilated product exceeds the dense limits.
TDecomposition t_decompose(const qcore::NetworkDescription& desc,
                           const netgraph::SignalLayout& layout);

// Residuals of the three conditions, for certification and reporting.
struct TConditionReport {
  double sum_vs_qfi_min_eig = 0.0;   // min eig of (sum_e T - F_Q/4); cond 1 holds iff >= psd_gap
  double diag_residual_max = 0.0;    // max_s |sum_e T_ss - Var_s|; cond 2
  double block_leak_max = 0.0;       // max off-block magnitude; cond 3a
  double part_min_eig = 0.0;         // min over e of min eig T^{(e)}; cond 3b
  bool holds = false;
};

// Evaluates the three conditions against the assembled state's exact QFI
// and variances.
TConditionReport verify_t_decomposition(const TDecomposition& t,
                                        const qcore::NetworkDescription& desc,
                                        const netgraph::SignalLayout& layout);

}  // namespace qnm::metro

#endif  // QNM_TMATRIX_HPP_
