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

#ifndef QNM_TOLERANCES_HPP_
#define QNM_TOLERANCES_HPP_

#include <string>

namespace qnm {

// Every numeric tolerance used by the library, in one place.  Values are
// mutable so a harness can tighten or relax them globally (see
// apply_tolerance_overrides for the QNM_TOL environment hook).
struct Tolerances {
  // State validation.
  double pure_norm = 1e-10;        // | ||psi|| - 1 |
  double trace_one = 1e-10;        // | tr(rho) - 1 |
  double state_min_eig = -1e-10;   // smallest admissible eigenvalue of rho
  double hermiticity = 1e-12;      // ||A - A^dagger||_max for observables
  double kraus_sum = 1e-10;        // || sum K^dagger K - 1 ||_max
  double projector_idem = 1e-10;   // ||P^2 - P||_max
  double mixture_sum = 1e-9;       // | sum p_i - 1 |

  // Probabilities and phases.
  double zero_probability = 1e-12;  // below this a projection outcome is "impossible"
  double phase_equality = 1e-9;     // global-phase-insensitive state equality

  // Spectral computations.
  double qfi_rank_cutoff = 1e-12;   // eigenvalue-pair cutoff lambda_k + lambda_l
  double variance_floor = 1e-13;    // below this a variance counts as zero
  double singular_qfi = 1e-12;      // eigenvalue cutoff for pseudo-inverting the QFI

  // Matrix-inequality certificates.
  double psd_gap = -1e-8;           // min eigenvalue for "bound holds" checks
  double decomposition_sum = 1e-8;  // reconstruction residuals (sum rules)
  double decomposition_psd = -1e-9; // min eigenvalue for decomposition parts
  double zero_block = 1e-10;        // entries that must vanish structurally

  // Operator support detection.
  double support_triviality = 1e-10;  // operator-norm deviation from 1 x tr_q/2

  // Finite differences.
  double fd_step = 1e-4;            // fidelity-based QFI oracle step
  double fi_fd_step = 1e-5;         // success-probability derivative step
  double degenerate_p = 1e-9;       // distance from {0,1} below which P is degenerate

  // Audit thresholds.
  double privacy_distance = 1e-9;   // max trace distance among same-signal probes
  double trace_spread = 1e-10;      // spread of outcome probabilities across probes
};

// Global tolerance set used by default throughout the library.
Tolerances& tolerances();

// Applies overrides of the form "name=value[,name=value...]" (the format of
// the QNM_TOL environment variable).  Unknown names raise ParseError.
void apply_tolerance_overrides(const std::string& spec);

// Reads QNM_TOL from the environment, if set, and applies it.
void apply_tolerance_env();

}  // namespace qnm

#endif  // QNM_TOLERANCES_HPP_
