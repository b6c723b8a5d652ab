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

#ifndef QNM_NETWORK_STATE_HPP_
#define QNM_NETWORK_STATE_HPP_

#include <vector>

#include "qnm/hypergraph.hpp"
#include "qnm/state.hpp"

namespace qnm::qcore {

// A channel applied to all source qubits of one vertex.  The Kraus
// operators act on the vertex's qubits [e,v] (e ascending); their dimension
// must be 2^{deg(v)}.
struct VertexChannel {
  int vertex = 0;
  std::vector<Matrix> kraus;
};

// One classical-mixing branch: with probability `probability`, apply the
// listed per-vertex channels (vertices not listed get the identity).
struct MixtureTerm {
  double probability = 1.0;
  std::vector<VertexChannel> channels;
};

// A network state in explicitly constructible form: one source state per
// hyperedge plus local per-vertex channels.
struct NetworkDescription {
  netgraph::Hypergraph g;
  std::vector<LabeledState> sources;    // one per edge, in edge order
  std::vector<VertexChannel> channels;  // optional; at most one per vertex
};

// Builds the product of the source states (validating that source i's
// register is exactly {[i,v] : v in edge i}) and applies the per-vertex
// channels.  Pure sources with no channels (or only single-Kraus unitary
// channels) stay pure.  Throws LabelMismatch / BadDistribution / TooLarge.
LabeledState assemble_network_state(const NetworkDescription& desc);

// General form with classical mixing: rho = sum_m p_m Phi_m(sources).
// An empty mixing list means "no channels".  Probabilities must be
// non-negative and sum to 1 within tolerance.  Single-term mixing with no
// channels stays pure; anything else is mixed.
LabeledState assemble_network_mixture(const netgraph::Hypergraph& g,
                                      const std::vector<LabeledState>& sources,
                                      const std::vector<MixtureTerm>& mixing);

// Standard channels on n qubits, as Kraus lists.
std::vector<Matrix> depolarizing_kraus(int n_qubits, double p);
std::vector<Matrix> dephasing_kraus(int n_qubits, double p);

}  // namespace qnm::qcore

#endif  // QNM_NETWORK_STATE_HPP_
