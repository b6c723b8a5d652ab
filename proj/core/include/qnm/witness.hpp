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

#ifndef QNM_WITNESS_HPP_
#define QNM_WITNESS_HPP_

#include <optional>
#include <vector>

#include "qnm/state.hpp"

namespace qnm::witness {

// Parameters of the spin-model witness bound: M sites, sources of r
// parties each, tau interaction neighbors per site (2 for a 1-d
// nearest-neighbor chain, 2^d for a d-dimensional cubic lattice), nu
// repetitions.  Variances and weights may be per-site or translationally
// invariant (single value broadcast).
struct SpinChainSpec {
  int M = 2;
  int r = 1;
  int nu = 1;
  int tau = 2;
  std::vector<double> variances;  // size 1 (broadcast) or M
  std::vector<double> alpha;      // size 1 (broadcast) or M

  void validate() const;  // throws InvalidSize / BadDistribution
};

// Mean-squared-error lower bound for the spin model:
//   Delta^2 >= sum_i alpha_i^2 / (4 nu tau r Var_i),
// using the influence cap k_s <= tau * r.  With tau = 2 this is the
// nearest-neighbor chain form sum_i alpha_i^2 / (8 nu r Var_i); with
// translational invariance and alpha_i = 1/M it reduces to
// 1 / (4 nu tau r M Var).  Returns +infinity if some weighted term has
// zero variance.
double spin_chain_mse_bound(const SpinChainSpec& spec);

// The transverse-field Ising comparison at coupling ratio eps:
// our influence-based QFI cap versus two reference separable-state caps.
struct IsingComparison {
  double ours = 0.0;                 // M * r * (2 + 2 eps + eps^2/2)
  double reference_small_eps = 0.0;  // M * (1 + 5 eps^2/4), for eps << 1
  double reference_large_eps = 0.0;  // M * (1/2 + eps + eps^2/2), for eps > eps_c
  double eps_critical = 0.7302;      // regime threshold for the large-eps form
  bool large_eps_in_regime = false;  // eps > eps_critical
};
IsingComparison ising_bound_compare(int M, double eps, int r = 1);

// ---- shallow circuits -------------------------------------------------------

enum class Geometry { kGeneric, kChain1d, kLattice2d };

// One gate of an explicit circuit layer: the sites it acts on and its
// unitary (most significant bit = first listed site).  For the
// embedded-parameter bound a Hermitian generator may ride along, making the
// gate the theta-family U(theta) = exp(-i theta H) U.
struct CircuitGate {
  std::vector<int> sites;
  qcore::Matrix unitary;
  std::optional<qcore::Matrix> generator;
};

// A depth-D local circuit.  `layers` (each a list of gates with pairwise
// disjoint site sets) is required for the exact checks; the closed-form
// bound needs only geometry, depth, gate locality l and Hamiltonian
// locality p.
struct CircuitSpec {
  Geometry geometry = Geometry::kGeneric;
  int sites = 0;
  int depth = 0;       // D; must equal layers.size() when layers are given
  int gate_locality = 2;   // l
  int ham_locality = 1;    // p
  std::vector<std::vector<CircuitGate>> layers;

  void validate() const;  // throws InvalidGraph-style errors on structure
};

// A site-local Hamiltonian term: the sites it acts on and the Hermitian
// matrix on them.
struct HamTerm {
  std::vector<int> sites;
  qcore::Matrix matrix;
};

// Closed-form cap on the locality q of any conjugated term U^dagger H_i U:
//   generic:    q <= l^D p
//   chain-1d:   q <= 2D + 1     (l = 2, p = 1)
//   lattice-2d: q <= D^2 + (D+1)^2   (l = 2 nearest-neighbor, p = 1)
// Depth 0 returns p (conjugation by nothing).  Throws UnsupportedGeometry
// when the circuit's locality parameters do not fit the closed form.
long light_cone_q(const CircuitSpec& spec);

// Conjugates every H term by the explicit circuit and measures its exact
// support (sites where it acts non-trivially within
// tolerances().support_triviality, by operator norm of the deviation from
// 1_q x tr_q/2).  Returns the maximum support size.  Throws TooLarge
// beyond 12 sites.
int exact_lightcone_check(const CircuitSpec& spec,
                          const std::vector<HamTerm>& terms);

// The light-cone variance cap on the QFI of sigma = U rho U^dagger under
// H = sum_i H_i:
//   F_Q(sigma, H) <= 4 q sum_i Var(rho, U^dagger H_i U).
// `factors` are the per-site (or per-block) product factors of the input
// state.  Returns the bound and, when the system is small enough, the
// exact F_Q(sigma, H) for gap reporting.
struct ShallowBound {
  double bound = 0.0;
  long q = 0;
  std::optional<double> exact_qfi;
};
ShallowBound shallow_qfi_bound(const std::vector<qcore::LabeledState>& factors,
                               const CircuitSpec& spec,
                               const std::vector<HamTerm>& terms);

// The embedded-parameter variant for 1-d chains: for gate generators
// H_{j,alpha} in layer j, the lifted terms are
// U_{<j}^dagger H_{j,alpha} U_{<j} (conjugation by the layers preceding j),
// and
//   F_Q(rho, H~) <= 4 sum_{j=1}^D D (2j + D + 4) sum_alpha Var(rho, H~_{j,alpha}).
// Optionally also evaluates the exact QFI of the theta-family
// sigma(theta) = U(theta) rho U(theta)^dagger by central finite differences
// on the fidelity.  Throws UnsupportedGeometry off the chain; TooLarge.
struct EmbeddedBound {
  double bound = 0.0;
  std::optional<double> exact_qfi_fd;
  double richardson_defect = 0.0;  // |fd(step) - fd(step/2)| consistency gap
};
EmbeddedBound embedded_param_qfi_bound(
    const std::vector<qcore::LabeledState>& factors, const CircuitSpec& spec,
    bool with_exact = true);

// Finite-difference QFI of the family theta -> U(theta) rho U(theta)^dagger
// at theta = 0 for a single aggregate generator: 4(1 - F(sigma(-d), sigma(+d)))/(2d)^2
// with Richardson refinement; exposed as the independent oracle.
double fd_qfi(const std::vector<qcore::LabeledState>& factors,
              const CircuitSpec& spec, double step, double* defect = nullptr);

}  // namespace qnm::witness

#endif  // QNM_WITNESS_HPP_
