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

#include "qnm/network_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qnm/errors.hpp"
#include "qnm/tolerances.hpp"

namespace qnm::qcore {

namespace {

// The register a vertex channel acts on: [e,v] for incident edges e
// ascending (matching canonical label order).
std::vector<QubitLabel> vertex_register(const netgraph::Hypergraph& g,
                                        int v) {
  std::vector<QubitLabel> reg;
  for (int e : g.incident_edges(v)) {
    reg.push_back(QubitLabel::source(e, v));
  }
  return reg;
}

Channel make_vertex_channel(const netgraph::Hypergraph& g,
                            const VertexChannel& vc) {
  if (!g.contains_vertex(vc.vertex)) {
    throw UnknownVertex("channel vertex " + std::to_string(vc.vertex) +
                        " not in the graph");
  }
  auto reg = vertex_register(g, vc.vertex);
  if (reg.empty()) {
    throw NoIncidentEdge("channel vertex " + std::to_string(vc.vertex) +
                         " holds no source qubit");
  }
  Channel ch{std::move(reg), vc.kraus};
  ch.validate();
  return ch;
}

void check_channel_list(const std::vector<VertexChannel>& channels) {
  std::vector<int> seen;
  for (const auto& vc : channels) seen.push_back(vc.vertex);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw BadDistribution("more than one channel on the same vertex");
  }
}

LabeledState product_of_sources(const netgraph::Hypergraph& g,
                                const std::vector<LabeledState>& sources) {
  if (static_cast<int>(sources.size()) != g.edge_count()) {
    throw InvalidSize("expected one source state per edge, got " +
                      std::to_string(sources.size()) + " for " +
                      std::to_string(g.edge_count()) + " edges");
  }
  LabeledState state = LabeledState::pure({}, Vector::Ones(1));
  for (int e = 0; e < g.edge_count(); ++e) {
    std::vector<QubitLabel> expected;
    for (int v : g.edge(e)) expected.push_back(QubitLabel::source(e, v));
    if (sources[static_cast<std::size_t>(e)].reg() != expected) {
      throw LabelMismatch("source state " + std::to_string(e) +
                          " does not live on the qubits of edge " +
                          std::to_string(e));
    }
    state = tensor(state, sources[static_cast<std::size_t>(e)]);
  }
  return state;
}

}  // namespace

LabeledState assemble_network_state(const NetworkDescription& desc) {
  check_channel_list(desc.channels);
  LabeledState state = product_of_sources(desc.g, desc.sources);
  for (const auto& vc : desc.channels) {
    state = apply_channel(state, make_vertex_channel(desc.g, vc));
  }
  return state;
}

LabeledState assemble_network_mixture(const netgraph::Hypergraph& g,
                                      const std::vector<LabeledState>& sources,
                                      const std::vector<MixtureTerm>& mixing) {
  if (mixing.empty()) {
    return assemble_network_state(NetworkDescription{g, sources, {}});
  }
  double total = 0.0;
  for (const auto& term : mixing) {
    if (term.probability < 0) {
      throw BadDistribution("mixing probability is negative");
    }
    total += term.probability;
  }
  if (std::abs(total - 1.0) > tolerances().mixture_sum) {
    throw BadDistribution("mixing probabilities sum to " +
                          std::to_string(total) + ", not 1");
  }
  if (mixing.size() == 1) {
    return assemble_network_state(
        NetworkDescription{g, sources, mixing[0].channels});
  }
  const LabeledState base = product_of_sources(g, sources);
  if (base.qubit_count() > kMaxMixedQubits) {
    throw TooLarge("classical mixing forces density form beyond " +
                   std::to_string(kMaxMixedQubits) + " qubits");
  }
  Matrix rho = Matrix::Zero(base.dim(), base.dim());
  for (const auto& term : mixing) {
    check_channel_list(term.channels);
    LabeledState branch = base;
    for (const auto& vc : term.channels) {
      branch = apply_channel(branch, make_vertex_channel(g, vc));
    }
    rho += term.probability * branch.to_density();
  }
  return LabeledState::mixed(base.reg(), std::move(rho));
}

std::vector<Matrix> depolarizing_kraus(int n_qubits, double p) {
  if (n_qubits < 1 || n_qubits > kMaxMixedQubits) {
    throw InvalidSize("depolarizing channel on " + std::to_string(n_qubits) +
                      " qubits");
  }
  if (p < 0.0 || p > 1.0) {
    throw BadDistribution("depolarizing strength must lie in [0,1]");
  }
  // rho -> (1-p) rho + p * tr(rho) I/d, via the d^2 Pauli-string Kraus set:
  // K_0 = sqrt(1 - p (d^2-1)/d^2) I, K_s = sqrt(p)/d P_s for P_s != I.
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  const std::array<Matrix, 4> pauli = {Matrix::Identity(2, 2), pauli_x(),
                                       pauli_y(), pauli_z()};
  std::vector<Matrix> kraus;
  const double d2 = static_cast<double>(d) * static_cast<double>(d);
  const long strings = 1L << (2 * n_qubits);
  for (long s = 0; s < strings; ++s) {
    Matrix op = Matrix::Identity(1, 1);
    long code = s;
    for (int q = 0; q < n_qubits; ++q) {
      op = kron(op, pauli[static_cast<std::size_t>(code % 4)]);
      code /= 4;
    }
    const double w = (s == 0) ? std::sqrt(1.0 - p * (d2 - 1.0) / d2)
                              : std::sqrt(p / d2);
    if (w > 0.0) kraus.push_back(w * op);
  }
  return kraus;
}

std::vector<Matrix> dephasing_kraus(int n_qubits, double p) {
  if (n_qubits < 1 || n_qubits > kMaxMixedQubits) {
    throw InvalidSize("dephasing channel on " + std::to_string(n_qubits) +
                      " qubits");
  }
  if (p < 0.0 || p > 1.0) {
    throw BadDistribution("dephasing strength must lie in [0,1]");
  }
  // rho -> (1-p) rho + p diag(rho): Kraus set sqrt(1-p) I plus sqrt(p) times
  // the basis projectors.
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  std::vector<Matrix> kraus;
  if (p < 1.0) {
    kraus.push_back(std::sqrt(1.0 - p) *
                    Matrix::Identity(d, d));
  }
  if (p > 0.0) {
    for (Eigen::Index i = 0; i < d; ++i) {
      Matrix proj = Matrix::Zero(d, d);
      proj(i, i) = std::sqrt(p);
      kraus.push_back(std::move(proj));
    }
  }
  return kraus;
}

}  // namespace qnm::qcore
