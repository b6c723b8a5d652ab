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

#ifndef QNM_PROTOCOL_HPP_
#define QNM_PROTOCOL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qnm/hypergraph.hpp"
#include "qnm/state.hpp"

namespace qnm::protocol {

// Sampled-mode settings: a seed is mandatory (reproducibility contract).
struct SampledMode {
  std::uint64_t seed = 0;
  long shots = 0;
};

// A run configuration of the post-selection estimation protocol: GHZ
// sources on the hyperedges, integer weights alpha (|alpha_v| in [1, L]),
// local phase parameters theta, and a designated center vertex.
struct ProtocolConfig {
  netgraph::Hypergraph g;
  int center = 0;
  std::map<int, int> alpha;      // vertex -> non-zero integer weight
  int L = 1;
  std::map<int, double> theta;   // vertex -> radians
  std::optional<SampledMode> sampled;

  // Structural checks: g connected, center valid and not a cut vertex,
  // alpha covers every vertex with 1 <= |alpha_v| <= L, theta covers every
  // vertex.  Throws InvalidGraph / UnknownVertex / CutVertexCenter /
  // ZeroWeight / BadDistribution.
  void validate() const;

  // Sum_v alpha_v theta_v: M times the target combination theta(alpha).
  double phase_sum() const;

  // Total simulated qubits: sum_e |e| + sum_{v != center} |alpha_v|.
  int qubit_count() const;
};

// Converts rational weights (numerator, denominator) to the integer
// weights the protocol needs: alpha_v = raw_v * L_tilde with L_tilde the
// smallest positive integer clearing all denominators.  Signs preserved.
// Throws ZeroWeight on zero numerators, BadDistribution on zero
// denominators or an empty map.
struct NormalizedWeights {
  std::map<int, int> alpha;
  long L_tilde = 1;
};
NormalizedWeights normalize_weights(
    const std::map<int, std::pair<long, long>>& raw);

// One post-selected local measurement in the exact run.
struct MeasurementStep {
  int vertex = 0;
  double success_probability = 0.0;  // conditional on all previous successes
  int n_v = 0;                       // qubits measured at this sensor
  // True when no two of the measured qubits belonged to the same coherent
  // (merged) GHZ cluster; each such step succeeds with exactly 2^{-n_v}.
  bool distinct_clusters = true;
};

// Result of the exact protocol simulation.
struct ProtocolTrace {
  std::vector<MeasurementStep> steps;   // non-center sensors, ascending id
  double all_success_probability = 0.0;
  // True when every step had distinct_clusters: the success-probability
  // lower bound is then attained with equality.
  bool equality_expected = true;
  // Conditional state on the center's source qubits after all
  // post-selections and the center's own phase.
  std::optional<qcore::LabeledState> center_state;
  // Probability that the center's GHZ projector succeeds, conditional on
  // every other sensor succeeding.
  double center_ghz_probability = 0.0;
  // The recurrence prediction cos^2(Phi/2) with Phi = sum_v alpha_v theta_v.
  double predicted_center_probability = 0.0;
  double phase_sum = 0.0;
};

// Simulates the protocol exactly: assembles GHZ sources and phased local
// plus states, projects each non-center sensor on its local GHZ state
// (ascending vertex id), then applies the center's phase to its
// lowest-indexed qubit and evaluates the center's GHZ outcome.
// Throws TooLarge / CutVertexCenter (and the validate() errors).
ProtocolTrace run_exact(const ProtocolConfig& cfg);

// One step of the measurement recurrence: after measuring `vertex`, S is
// the set of finished sensors, S_tilde the sensors sharing the signal
// state, Q the qubits carrying it, and `phase` the accumulated phase
// sum_{j in S} alpha_j theta_j.
struct StepPrediction {
  int vertex = 0;
  std::vector<int> S;
  std::vector<int> S_tilde;
  std::vector<qcore::QubitLabel> Q;
  double phase = 0.0;
};

// Pure bookkeeping prediction of the post-selected signal state after each
// measurement, in the given order (empty order = ascending vertex id,
// restricted to measurable frontier vertices).  Terminal state must be
// S = V \ {center}, S_tilde = {center}, with all of the center's source
// qubits in one coherent cluster; otherwise throws NotConvergent (the
// diagnostic for cut-vertex centers).  Does not pre-validate the
// cut-vertex condition.
std::vector<StepPrediction> signal_state_predict(const ProtocolConfig& cfg,
                                                 std::vector<int> order = {});

// Monte-Carlo sampling of the measurement branches.
//
// Randomness contract: shot i uses an independent generator seeded with
// splitmix64(seed + i); within a shot, one uniform draw per non-center
// sensor in ascending vertex order decides success/failure, and (on
// all-success) one final draw decides the center outcome.
struct SampledTrace {
  long shots = 0;
  long all_success_count = 0;
  long center_ghz_count = 0;  // among all-success shots
  // Count of shots whose first failure happened at each vertex, keyed by
  // ascending vertex id (center excluded).
  std::map<int, long> first_failure_counts;
  // center_ghz_count / all_success_count; NaN when no shot fully succeeded.
  double conditional_frequency = 0.0;
};
SampledTrace run_sampled(const ProtocolConfig& cfg);

// The counting bound on the all-success probability:
//   log2 p_succ >= -[ sum_{v != center} |alpha_v| + sum_e |e| - deg(center) ].
double success_prob_lower_bound(const ProtocolConfig& cfg);

// Classical Fisher information of the center's conditional binary outcome
// with respect to the scalar combination theta(alpha), evaluated at the
// configured theta: FI = (dP/dtheta)^2 / (P(1-P)), with dP/dtheta by
// central differences along the direction that advances theta(alpha) at
// unit rate (step tolerances().fi_fd_step, Richardson-checked).
// Throws DegenerateP when P(1-P) vanishes at the evaluation point.
struct FisherEstimate {
  double fi = 0.0;
  double p = 0.0;
  double dp = 0.0;                 // dP/d theta(alpha)
  double richardson_defect = 0.0;  // |refined - coarse| derivative gap
  double theta_alpha = 0.0;        // evaluation point theta(alpha)
};
FisherEstimate fisher_information_of_estimate(const ProtocolConfig& cfg);

// Privacy audit: for every outcome subset S of the non-center sensors,
// computes the unnormalized conditional center state
//   rho(S) = Tr_{not center}[ rho_theta (prod_{v in S} GHZ_v)
//                                        (prod_{v not in S} (1 - GHZ_v)) ]
// for each probe theta-vector, and checks that rho(S) — full-success and
// partial alike — agrees (trace distance) across probes sharing the same
// combination sum_v alpha_v theta_v, and that every outcome probability
// tr rho(S) is identical across ALL probes.  Probes with different
// combinations are reported (cross-group distances) but only the
// full-success case is asserted to actually differ when they do.
struct PrivacyCase {
  std::vector<int> subset;            // S, ascending vertex ids
  double within_group_max = 0.0;      // max pairwise distance, same-combination probes
  double cross_group_max = 0.0;       // max pairwise distance across groups
  double trace_spread = 0.0;          // max |tr rho(S)_i - tr rho(S)_j| over all probes
};
struct PrivacyReport {
  std::vector<PrivacyCase> cases;     // indexed over subsets S
  int group_count = 0;                // distinct combination values probed
  double partial_within_max = 0.0;    // max within-group distance, S != full
  double full_within_max = 0.0;       // within-group distance at S = full
  double full_cross_min = 0.0;        // min cross-group distance at S = full (0 if single group)
  double max_trace_spread = 0.0;      // over all subsets and probes
  bool holds = false;                 // within-group + trace-spread assertions
};
PrivacyReport privacy_audit(const ProtocolConfig& cfg,
                            const std::vector<std::map<int, double>>& probes);

}  // namespace qnm::protocol

#endif  // QNM_PROTOCOL_HPP_
