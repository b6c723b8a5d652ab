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

#include "qnm/tmatrix.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "qnm/errors.hpp"
#include "qnm/tolerances.hpp"

namespace qnm::metro {

using qcore::Channel;
using qcore::LabeledState;
using qcore::Matrix;
using qcore::Observable;
using qcore::QubitLabel;

namespace {

struct Dilation {
  std::vector<QubitLabel> sources;   // the vertex's source qubits
  std::vector<QubitLabel> ancillas;  // empty for a unitary channel
  Matrix unitary;                    // on sources + ancillas (that order)
};

std::vector<QubitLabel> vertex_sources(const netgraph::Hypergraph& g, int v) {
  std::vector<QubitLabel> reg;
  for (int e : g.incident_edges(v)) {
    reg.push_back(QubitLabel::source(e, v));
  }
  return reg;
}

int ancilla_qubits_for(std::size_t kraus_count) {
  int a = 0;
  while ((std::size_t{1} << a) < kraus_count) ++a;
  return a;
}

// Unitary dilation: U on (vertex qubits, ancillas) with
// U (|s> x |0...0>) = sum_k (K_k |s>) x |k>.
Matrix dilation_unitary(const std::vector<Matrix>& kraus, int anc_qubits) {
  const Eigen::Index d = kraus[0].rows();
  const Eigen::Index da = Eigen::Index{1} << anc_qubits;
  Matrix v = Matrix::Zero(d * da, d);
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    for (Eigen::Index col = 0; col < d; ++col) {
      for (Eigen::Index row = 0; row < d; ++row) {
        v(row * da + static_cast<Eigen::Index>(k), col) = kraus[k](row, col);
      }
    }
  }
  const Matrix w = qcore::complete_to_unitary(v);
  // Re-spread the columns so that column (s * da) -- the |s> x |0...0>
  // input -- carries V's column s, and the filler columns land elsewhere.
  Matrix u(d * da, d * da);
  for (Eigen::Index s = 0; s < d; ++s) {
    u.col(s * da) = w.col(s);
    for (Eigen::Index t = 1; t < da; ++t) {
      u.col(s * da + t) = w.col(d + s * (da - 1) + (t - 1));
    }
  }
  return u;
}

std::vector<Observable> resolved_generators(
    const netgraph::Hypergraph& g, const netgraph::SignalLayout& layout) {
  if (layout.generators.empty()) return standard_generators(g, layout);
  if (layout.generators.size() != layout.signals.size()) {
    throw InvalidSize("expected one generator per signal");
  }
  return layout.generators;
}

// Every generator must act within its own signal's source qubits; this is
// what confines each certificate matrix to its edge block.
void check_generator_supports(const netgraph::Hypergraph& g,
                              const netgraph::SignalLayout& layout,
                              const std::vector<Observable>& generators) {
  for (int s = 0; s < layout.signal_count(); ++s) {
    std::set<QubitLabel> allowed;
    for (int v : layout.signals[static_cast<std::size_t>(s)]) {
      for (int e : g.incident_edges(v)) {
        allowed.insert(QubitLabel::source(e, v));
      }
    }
    for (const auto& q : generators[static_cast<std::size_t>(s)].support) {
      if (!allowed.count(q)) {
        throw NotNetworkForm("generator of signal " + std::to_string(s) +
                             " acts on " + q.to_string() +
                             ", outside the signal's own source qubits");
      }
    }
  }
}

}  // namespace

TDecomposition t_decompose(const qcore::NetworkDescription& desc,
                           const netgraph::SignalLayout& layout) {
  const netgraph::Hypergraph& g = desc.g;
  layout.validate(g);
  const auto generators = resolved_generators(g, layout);
  for (const auto& h : generators) h.validate();
  check_generator_supports(g, layout, generators);

  // Source states, one per edge on exactly that edge's qubits.
  if (static_cast<int>(desc.sources.size()) != g.edge_count()) {
    throw NotNetworkForm("expected one source state per edge");
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    std::vector<QubitLabel> expected;
    for (int v : g.edge(e)) expected.push_back(QubitLabel::source(e, v));
    if (desc.sources[static_cast<std::size_t>(e)].reg() != expected) {
      throw NotNetworkForm("source state " + std::to_string(e) +
                           " does not live on the qubits of edge " +
                           std::to_string(e));
    }
  }

  // Dilate each per-vertex channel.
  std::map<int, Dilation> dilations;
  for (const auto& vc : desc.channels) {
    if (!g.contains_vertex(vc.vertex)) {
      throw NotNetworkForm("channel vertex " + std::to_string(vc.vertex) +
                           " not in the graph");
    }
    if (dilations.count(vc.vertex)) {
      throw NotNetworkForm("more than one channel on vertex " +
                           std::to_string(vc.vertex));
    }
    auto sources = vertex_sources(g, vc.vertex);
    if (sources.empty()) {
      throw NotNetworkForm("channel vertex " + std::to_string(vc.vertex) +
                           " holds no source qubit");
    }
    Channel ch{sources, vc.kraus};
    ch.validate();
    if (ch.is_identity()) continue;
    Dilation dil;
    dil.sources = std::move(sources);
    const int anc = ancilla_qubits_for(vc.kraus.size());
    for (int i = 0; i < anc; ++i) {
      dil.ancillas.push_back(QubitLabel::ancilla(vc.vertex, i));
    }
    dil.unitary = (anc == 0) ? vc.kraus[0] : dilation_unitary(vc.kraus, anc);
    dilations.emplace(vc.vertex, std::move(dil));
  }

  int total_qubits = g.qubit_count();
  for (const auto& [v, dil] : dilations) {
    total_qubits += static_cast<int>(dil.ancillas.size());
  }
  if (total_qubits > qcore::kMaxMixedQubits) {
    throw TooLarge("dilated product of " + std::to_string(total_qubits) +
                   " qubits exceeds " +
                   std::to_string(qcore::kMaxMixedQubits));
  }

  // Product factors: the edge sources, then one |0...0> register per
  // dilated vertex that needed ancillas.
  std::vector<LabeledState> factors = desc.sources;
  std::vector<int> ancilla_part_of;  // vertex ids, in factor order
  for (const auto& [v, dil] : dilations) {
    if (!dil.ancillas.empty()) {
      factors.push_back(qcore::zero_state(dil.ancillas));
      ancilla_part_of.push_back(v);
    }
  }

  // Lift each generator through the dilations: H -> U^dagger H U, with U
  // the product of the dilation unitaries of the vertices it touches.
  std::vector<Observable> lifted;
  lifted.reserve(generators.size());
  for (const auto& h : generators) {
    std::set<QubitLabel> reg_set(h.support.begin(), h.support.end());
    std::vector<const Dilation*> touching;
    for (const auto& [v, dil] : dilations) {
      const bool touches =
          std::any_of(dil.sources.begin(), dil.sources.end(),
                      [&](const QubitLabel& q) { return reg_set.count(q); });
      if (touches) {
        touching.push_back(&dil);
        reg_set.insert(dil.sources.begin(), dil.sources.end());
        reg_set.insert(dil.ancillas.begin(), dil.ancillas.end());
      }
    }
    std::vector<QubitLabel> reg(reg_set.begin(), reg_set.end());
    const int n = static_cast<int>(reg.size());
    const Eigen::Index d = Eigen::Index{1} << n;
    Matrix m = qcore::apply_embedded_left(h.matrix, Matrix::Identity(d, d), n,
                                          qcore::positions_in(reg, h.support));
    for (const Dilation* dil : touching) {
      std::vector<QubitLabel> gate_reg = dil->sources;
      gate_reg.insert(gate_reg.end(), dil->ancillas.begin(),
                      dil->ancillas.end());
      const auto pos = qcore::positions_in(reg, gate_reg);
      m = qcore::apply_embedded_right(dil->unitary, m, n, pos);
      m = qcore::apply_embedded_left(dil->unitary.adjoint(), m, n, pos);
    }
    lifted.push_back(Observable{std::move(reg), std::move(m)});
  }

  const CovDecomposition split = cov_decompose(factors, lifted);

  TDecomposition out;
  const int ec = g.edge_count();
  for (int e = 0; e < ec; ++e) {
    Matrix t = split.parts[static_cast<std::size_t>(e)];
    for (int v : g.edge(e)) {
      const auto it =
          std::find(ancilla_part_of.begin(), ancilla_part_of.end(), v);
      if (it != ancilla_part_of.end()) {
        const std::size_t part =
            static_cast<std::size_t>(ec) +
            static_cast<std::size_t>(it - ancilla_part_of.begin());
        t += split.parts[part] / static_cast<double>(g.degree(v));
      }
    }
    out.parts.push_back(std::move(t));
    std::vector<int> block;
    const auto& edge = g.edge(e);
    for (int s = 0; s < layout.signal_count(); ++s) {
      const auto& sig = layout.signals[static_cast<std::size_t>(s)];
      const bool touches = std::any_of(sig.begin(), sig.end(), [&](int v) {
        return std::binary_search(edge.begin(), edge.end(), v);
      });
      if (touches) block.push_back(s);
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

TConditionReport verify_t_decomposition(const TDecomposition& t,
                                        const qcore::NetworkDescription& desc,
                                        const netgraph::SignalLayout& layout) {
  const netgraph::Hypergraph& g = desc.g;
  layout.validate(g);
  const auto generators = resolved_generators(g, layout);
  const int s_count = layout.signal_count();
  if (static_cast<int>(t.parts.size()) != g.edge_count() ||
      t.blocks.size() != t.parts.size()) {
    throw InvalidSize("certificate does not match the graph's edge count");
  }
  for (const auto& part : t.parts) {
    if (part.rows() != s_count || part.cols() != s_count) {
      throw InvalidSize("certificate block is not signal-count square");
    }
  }

  const LabeledState rho = qcore::assemble_network_state(desc);
  const QfiMatrix qfi = qfi_matrix(rho, generators);

  TConditionReport report;
  Matrix sum = Matrix::Zero(s_count, s_count);
  for (const auto& part : t.parts) sum += part;

  const Matrix gap = sum - qfi.matrix.cast<qcore::cdouble>() / 4.0;
  report.sum_vs_qfi_min_eig = qcore::min_eigenvalue(gap);

  report.diag_residual_max = 0.0;
  for (int s = 0; s < s_count; ++s) {
    const double var =
        qcore::variance(rho, generators[static_cast<std::size_t>(s)]);
    report.diag_residual_max =
        std::max(report.diag_residual_max, std::abs(sum(s, s) - var));
  }

  report.block_leak_max = 0.0;
  report.part_min_eig = 0.0;
  bool first_part = true;
  for (std::size_t e = 0; e < t.parts.size(); ++e) {
    std::vector<char> in_block(static_cast<std::size_t>(s_count), 0);
    for (int s : t.blocks[e]) in_block[static_cast<std::size_t>(s)] = 1;
    for (int i = 0; i < s_count; ++i) {
      for (int j = 0; j < s_count; ++j) {
        if (!in_block[static_cast<std::size_t>(i)] ||
            !in_block[static_cast<std::size_t>(j)]) {
          report.block_leak_max =
              std::max(report.block_leak_max, std::abs(t.parts[e](i, j)));
        }
      }
    }
    const double me = qcore::min_eigenvalue(t.parts[e]);
    report.part_min_eig = first_part ? me : std::min(report.part_min_eig, me);
    first_part = false;
  }

  const Tolerances& tol = tolerances();
  report.holds = report.sum_vs_qfi_min_eig >= tol.psd_gap &&
                 report.diag_residual_max <= tol.decomposition_sum &&
                 report.block_leak_max <= tol.zero_block &&
                 report.part_min_eig >= tol.decomposition_psd;
  return report;
}

}  // namespace qnm::metro
