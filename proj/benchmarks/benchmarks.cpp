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
//
// Microbenchmarks for the dominant code paths: network-state assembly,
// QFI matrices (pure and mixed), the bound certificate, and the exact
// protocol run over growing ring sizes.

#include <vector>

#include <benchmark/benchmark.h>

#include "qnm/hypergraph.hpp"
#include "qnm/network_state.hpp"
#include "qnm/protocol.hpp"
#include "qnm/qfi.hpp"
#include "qnm/state.hpp"

namespace {

using qnm::netgraph::Hypergraph;
using qnm::netgraph::SignalLayout;
using qnm::qcore::LabeledState;
using qnm::qcore::QubitLabel;

// Ring of M pair sources (single pair for M = 2), singleton signals with
// uniform weights and the standard half-Z generators.
struct Ring {
  Hypergraph g;
  SignalLayout layout;
  std::vector<LabeledState> sources;
};

Ring make_ring(int m) {
  std::vector<std::vector<int>> edges;
  if (m == 2) {
    edges.push_back({0, 1});
  } else {
    for (int v = 0; v < m; ++v) edges.push_back({v, (v + 1) % m});
  }
  Ring ring;
  ring.g = Hypergraph(m, edges);
  for (int s = 0; s < m; ++s) {
    ring.layout.signals.push_back({s});
    ring.layout.weights.push_back(1.0 / m);
  }
  ring.layout.generators =
      qnm::metro::standard_generators(ring.g, ring.layout);
  for (int e = 0; e < ring.g.edge_count(); ++e) {
    std::vector<QubitLabel> reg;
    for (int v : ring.g.edge(e)) reg.push_back(QubitLabel::source(e, v));
    ring.sources.push_back(qnm::qcore::ghz_state(reg));
  }
  return ring;
}

void BM_AssembleNetworkState(benchmark::State& state) {
  const Ring ring = make_ring(static_cast<int>(state.range(0)));
  const qnm::qcore::NetworkDescription desc{ring.g, ring.sources, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnm::qcore::assemble_network_state(desc));
  }
}
BENCHMARK(BM_AssembleNetworkState)->Arg(3)->Arg(4)->Arg(5);

void BM_QfiMatrixPure(benchmark::State& state) {
  const Ring ring = make_ring(static_cast<int>(state.range(0)));
  const auto rho = qnm::qcore::assemble_network_state(
      qnm::qcore::NetworkDescription{ring.g, ring.sources, {}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qnm::metro::qfi_matrix(rho, ring.layout.generators));
  }
}
BENCHMARK(BM_QfiMatrixPure)->Arg(3)->Arg(4)->Arg(5);

void BM_QfiMatrixMixed(benchmark::State& state) {
  const Ring ring = make_ring(static_cast<int>(state.range(0)));
  std::vector<qnm::qcore::VertexChannel> channels;
  channels.push_back(qnm::qcore::VertexChannel{
      0, qnm::qcore::dephasing_kraus(ring.g.degree(0), 0.25)});
  const auto rho = qnm::qcore::assemble_network_state(
      qnm::qcore::NetworkDescription{ring.g, ring.sources, channels});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qnm::metro::qfi_matrix(rho, ring.layout.generators));
  }
}
BENCHMARK(BM_QfiMatrixMixed)->Arg(3)->Arg(4);

void BM_VerifyQfiBound(benchmark::State& state) {
  const Ring ring = make_ring(static_cast<int>(state.range(0)));
  const auto rho = qnm::qcore::assemble_network_state(
      qnm::qcore::NetworkDescription{ring.g, ring.sources, {}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qnm::metro::verify_qfi_bound(ring.g, ring.layout, rho));
  }
}
BENCHMARK(BM_VerifyQfiBound)->Arg(3)->Arg(4)->Arg(5);

void BM_ProtocolRunExact(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<std::vector<int>> edges;
  for (int v = 0; v < m; ++v) edges.push_back({v, (v + 1) % m});
  qnm::protocol::ProtocolConfig cfg;
  cfg.g = Hypergraph(m, edges);
  cfg.center = 0;
  cfg.L = 1;
  for (int v = 0; v < m; ++v) {
    cfg.alpha[v] = 1;
    cfg.theta[v] = 0.1;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnm::protocol::run_exact(cfg));
  }
}
BENCHMARK(BM_ProtocolRunExact)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
