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
// Acceptance gate.  Runs the nine release criteria end to end, prints one
// PASS/FAIL line per criterion, and exits non-zero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "qnm/covariance.hpp"
#include "qnm/network_state.hpp"
#include "qnm/protocol.hpp"
#include "qnm/qfi.hpp"
#include "qnm/state.hpp"
#include "qnm/tmatrix.hpp"
#include "qnm/tolerances.hpp"
#include "qnm/witness.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buffer[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buffer, sizeof(buffer), pattern, args);
  va_end(args);
  return buffer;
}

// ---- randomness ----------------------------------------------------------------

qnm::qcore::Matrix random_unitary(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  qnm::qcore::Matrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      a(r, c) = std::complex<double>(normal(gen), normal(gen));
    }
  }
  Eigen::HouseholderQR<qnm::qcore::Matrix> qr(a);
  qnm::qcore::Matrix q = qr.householderQ();
  const qnm::qcore::Matrix rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const auto d = rm(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

qnm::qcore::Vector random_pure(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  qnm::qcore::Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = std::complex<double>(normal(gen), normal(gen));
  }
  v.normalize();
  return v;
}

// Random CPTP map on dimension dim via a Stinespring slice:
// K_k = (<k| x 1) U (|0> x 1) for a Haar-like unitary on env * dim.
std::vector<qnm::qcore::Matrix> random_kraus(int dim, int env,
                                             std::mt19937_64& gen) {
  const qnm::qcore::Matrix u = random_unitary(env * dim, gen);
  std::vector<qnm::qcore::Matrix> ks;
  for (int k = 0; k < env; ++k) {
    ks.push_back(u.block(k * dim, 0, dim, dim));
  }
  return ks;
}

// A random network instance: 2..4 vertices, hyperedges covering every
// vertex, at most 10 source qubits, one singleton signal per vertex with
// uniform weights and the standard half-Z generators, and a Haar-random
// pure source on every hyperedge.
struct Instance {
  qnm::netgraph::Hypergraph g;
  qnm::netgraph::SignalLayout layout;
  std::vector<qnm::qcore::LabeledState> sources;
};

Instance random_instance(std::mt19937_64& gen) {
  for (;;) {
    const int K = 2 + static_cast<int>(gen() % 3);
    const int E = 1 + static_cast<int>(gen() % K);
    std::set<std::vector<int>> edge_set;
    for (int e = 0; e < E; ++e) {
      const int size = 2 + static_cast<int>(gen() % (K - 1));
      std::vector<int> verts(K);
      for (int v = 0; v < K; ++v) verts[v] = v;
      std::shuffle(verts.begin(), verts.end(), gen);
      verts.resize(size);
      std::sort(verts.begin(), verts.end());
      edge_set.insert(verts);
    }
    const std::vector<std::vector<int>> edges(edge_set.begin(),
                                              edge_set.end());
    std::vector<bool> covered(K, false);
    int qubits = 0;
    for (const auto& e : edges) {
      qubits += static_cast<int>(e.size());
      for (int v : e) covered[v] = true;
    }
    if (qubits > 10 ||
        !std::all_of(covered.begin(), covered.end(), [](bool c) { return c; })) {
      continue;
    }

    Instance inst;
    inst.g = qnm::netgraph::Hypergraph(K, edges);
    for (int s = 0; s < K; ++s) {
      inst.layout.signals.push_back({s});
      inst.layout.weights.push_back(1.0 / K);
    }
    inst.layout.generators =
        qnm::metro::standard_generators(inst.g, inst.layout);
    for (int e = 0; e < inst.g.edge_count(); ++e) {
      std::vector<qnm::qcore::QubitLabel> reg;
      for (int v : inst.g.edge(e)) {
        reg.push_back(qnm::qcore::QubitLabel::source(e, v));
      }
      inst.sources.push_back(qnm::qcore::LabeledState::pure(
          reg, random_pure(1 << reg.size(), gen)));
    }
    return inst;
  }
}

// Ring-of-pairs protocol configuration (a single pair when m = 2).
qnm::protocol::ProtocolConfig cycle_config(int m, double theta_fill) {
  std::vector<std::vector<int>> edges;
  if (m == 2) {
    edges.push_back({0, 1});
  } else {
    for (int v = 0; v < m; ++v) edges.push_back({v, (v + 1) % m});
  }
  qnm::protocol::ProtocolConfig cfg;
  cfg.g = qnm::netgraph::Hypergraph(m, edges);
  cfg.center = 0;
  cfg.L = 1;
  for (int v = 0; v < m; ++v) {
    cfg.alpha[v] = 1;
    cfg.theta[v] = theta_fill;
  }
  return cfg;
}

// Random brickwork chain circuit: layer d places two-site gates starting
// at site d % 2.
qnm::witness::CircuitSpec random_brickwork(int sites, int depth,
                                           std::mt19937_64& gen) {
  qnm::witness::CircuitSpec spec;
  spec.geometry = qnm::witness::Geometry::kChain1d;
  spec.sites = sites;
  spec.depth = depth;
  spec.gate_locality = 2;
  spec.ham_locality = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<qnm::witness::CircuitGate> layer;
    for (int first = d % 2; first + 1 < sites; first += 2) {
      qnm::witness::CircuitGate gate;
      gate.sites = {first, first + 1};
      gate.unitary = random_unitary(4, gen);
      layer.push_back(std::move(gate));
    }
    spec.layers.push_back(std::move(layer));
  }
  return spec;
}

// ---- criteria ---------------------------------------------------------------------

// 1. The influence bound certificate on random noisy networks: diag-bound
// minus QFI stays PSD (min eigenvalue >= -1e-8) on 100 seeded instances
// with Haar sources and random per-vertex Kraus channels, within 2 minutes.
Outcome criterion1() {
  const auto start = Clock::now();
  std::mt19937_64 gen(101);
  double worst_gap = 1e9;
  int count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = random_instance(gen);
    std::vector<qnm::qcore::VertexChannel> channels;
    std::set<int> used;
    const int n_ch = static_cast<int>(gen() % 3);
    for (int c = 0; c < n_ch; ++c) {
      const int v = static_cast<int>(gen() % inst.g.vertex_count());
      if (!used.insert(v).second) continue;
      channels.push_back(qnm::qcore::VertexChannel{
          v, random_kraus(1 << inst.g.degree(v), 2, gen)});
    }
    const auto rho = qnm::qcore::assemble_network_state(
        qnm::qcore::NetworkDescription{inst.g, inst.sources, channels});
    const auto cert = qnm::metro::verify_qfi_bound(inst.g, inst.layout, rho);
    worst_gap = std::min(worst_gap, cert.gap_min_eig);
    ++count;
  }
  const long elapsed = ms_since(start);
  const bool pass = count == 100 && worst_gap >= -1e-8 && elapsed < 120000;
  return {pass, fmt("%d random noisy networks, worst diag-bound gap "
                    "min-eig %.3e (limit -1e-8), %ld ms (limit 120000)",
                    count, worst_gap, elapsed)};
}

// 2. The covariance decomposition on random product states: parts sum to
// the covariance (<= 1e-9), every part is PSD (>= -1e-9), and entries of
// signals not touching a factor vanish (<= 1e-10); 100 instances within
// one minute.
Outcome criterion2() {
  const auto start = Clock::now();
  std::mt19937_64 gen(202);
  double worst_sum = 0.0, worst_eig = 1e9, worst_zero = 0.0;
  int count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = random_instance(gen);
    const auto decomp =
        qnm::metro::cov_decompose(inst.sources, inst.layout.generators);
    qnm::qcore::Matrix sum = qnm::qcore::Matrix::Zero(
        decomp.total.matrix.rows(), decomp.total.matrix.cols());
    for (std::size_t k = 0; k < decomp.parts.size(); ++k) {
      const auto& part = decomp.parts[k];
      sum += part;
      const qnm::qcore::Matrix herm = (part + part.adjoint()) / 2.0;
      worst_eig = std::min(worst_eig, qnm::qcore::min_eigenvalue(herm));
      const auto& edge = inst.g.edge(static_cast<int>(k));
      for (int s = 0; s < inst.g.vertex_count(); ++s) {
        if (std::find(edge.begin(), edge.end(), s) != edge.end()) continue;
        for (int t = 0; t < inst.g.vertex_count(); ++t) {
          worst_zero = std::max(worst_zero, std::abs(part(s, t)));
          worst_zero = std::max(worst_zero, std::abs(part(t, s)));
        }
      }
    }
    worst_sum = std::max(
        worst_sum, (sum - decomp.total.matrix).cwiseAbs().maxCoeff());
    ++count;
  }
  const long elapsed = ms_since(start);
  const bool pass = count == 100 && worst_sum <= 1e-9 && worst_eig >= -1e-9 &&
                    worst_zero <= 1e-10 && elapsed < 60000;
  return {pass, fmt("%d random product states, sum residual %.3e (<=1e-9), "
                    "part min-eig %.3e (>=-1e-9), off-factor leak %.3e "
                    "(<=1e-10), %ld ms (limit 60000)",
                    count, worst_sum, worst_eig, worst_zero, elapsed)};
}

// 3. The per-edge certificate matrices on the triangle and on 20 random
// instances (half with a random dephasing vertex): the PSD domination,
// diagonal sum rule, and block-support conditions all hold.
Outcome criterion3() {
  std::mt19937_64 gen(303);
  int held = 0, count = 0;
  double worst_psd = 1e9, worst_diag = 0.0, worst_leak = 0.0,
         worst_part = 1e9;

  const auto check = [&](const qnm::qcore::NetworkDescription& desc,
                         const qnm::netgraph::SignalLayout& layout) {
    const auto t = qnm::metro::t_decompose(desc, layout);
    const auto rep = qnm::metro::verify_t_decomposition(t, desc, layout);
    if (rep.holds) ++held;
    ++count;
    worst_psd = std::min(worst_psd, rep.sum_vs_qfi_min_eig);
    worst_diag = std::max(worst_diag, rep.diag_residual_max);
    worst_leak = std::max(worst_leak, rep.block_leak_max);
    worst_part = std::min(worst_part, rep.part_min_eig);
  };

  // The three-vertex ring of pair sources.
  {
    const qnm::netgraph::Hypergraph g(3, {{0, 1}, {0, 2}, {1, 2}});
    qnm::netgraph::SignalLayout layout;
    std::vector<qnm::qcore::LabeledState> sources;
    for (int s = 0; s < 3; ++s) {
      layout.signals.push_back({s});
      layout.weights.push_back(1.0 / 3.0);
    }
    layout.generators = qnm::metro::standard_generators(g, layout);
    for (int e = 0; e < g.edge_count(); ++e) {
      std::vector<qnm::qcore::QubitLabel> reg;
      for (int v : g.edge(e)) {
        reg.push_back(qnm::qcore::QubitLabel::source(e, v));
      }
      sources.push_back(qnm::qcore::ghz_state(reg));
    }
    check(qnm::qcore::NetworkDescription{g, sources, {}}, layout);
  }

  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = random_instance(gen);
    std::vector<qnm::qcore::VertexChannel> channels;
    if (gen() % 2 == 0) {
      // The dilation adds deg(v)+1 ancilla qubits for a dephasing channel;
      // only pick a vertex that keeps the dilated product within the dense
      // limit of 12 qubits.
      std::vector<int> eligible;
      for (int v = 0; v < inst.g.vertex_count(); ++v) {
        if (inst.g.qubit_count() + inst.g.degree(v) + 1 <= 12) {
          eligible.push_back(v);
        }
      }
      if (!eligible.empty()) {
        const int v = eligible[gen() % eligible.size()];
        std::uniform_real_distribution<double> unif(0.05, 0.6);
        channels.push_back(qnm::qcore::VertexChannel{
            v, qnm::qcore::dephasing_kraus(inst.g.degree(v), unif(gen))});
      }
    }
    check(qnm::qcore::NetworkDescription{inst.g, inst.sources, channels},
          inst.layout);
  }

  const bool pass = held == count && count >= 21;
  return {pass, fmt("%d/%d certificates held (triangle + random); "
                    "sum-vs-qfi min-eig %.3e, diag residual %.3e, "
                    "block leak %.3e, part min-eig %.3e",
                    held, count, worst_psd, worst_diag, worst_leak,
                    worst_part)};
}

// 4. Exact protocol runs on rings M = 3, 4, 5: the center outcome matches
// cos^2(Phi/2) to 1e-9 and the all-success probability equals
// 2^-(3M-3) to 1e-12, within one minute.
Outcome criterion4() {
  const auto start = Clock::now();
  double worst_cos = 0.0, worst_succ = 0.0;
  for (int m = 3; m <= 5; ++m) {
    qnm::protocol::ProtocolConfig cfg = cycle_config(m, 0.0);
    for (int v = 0; v < m; ++v) cfg.theta[v] = 0.1 + 0.03 * v;
    const auto trace = qnm::protocol::run_exact(cfg);
    const double predicted =
        std::cos(trace.phase_sum / 2.0) * std::cos(trace.phase_sum / 2.0);
    worst_cos = std::max(
        worst_cos, std::abs(trace.center_ghz_probability - predicted));
    worst_succ = std::max(
        worst_succ, std::abs(trace.all_success_probability -
                             std::ldexp(1.0, -(3 * m - 3))));
    if (!trace.equality_expected) {
      return {false, fmt("ring M=%d unexpectedly lost cluster distinctness", m)};
    }
  }
  const long elapsed = ms_since(start);
  const bool pass = worst_cos <= 1e-9 && worst_succ <= 1e-12 &&
                    elapsed < 60000;
  return {pass, fmt("rings M=3,4,5: |center - cos^2(Phi/2)| %.3e (<=1e-9), "
                    "|success - 2^-(3M-3)| %.3e (<=1e-12), %ld ms "
                    "(limit 60000)",
                    worst_cos, worst_succ, elapsed)};
}

// 5. Fisher information of the center outcome scales as M^2: the
// least-squares log-log slope over M = 2..5 lies within 2.0 +/- 0.05.
Outcome criterion5() {
  std::vector<double> xs, ys;
  for (int m = 2; m <= 5; ++m) {
    const auto fi =
        qnm::protocol::fisher_information_of_estimate(cycle_config(m, 0.1));
    xs.push_back(static_cast<double>(m));
    ys.push_back(fi.fi);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(xs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const bool pass = std::abs(slope - 2.0) <= 0.05;
  return {pass, fmt("log-log information slope over M=2..5: %.6f "
                    "(target 2.00 +/- 0.05)",
                    slope)};
}

// 6. Privacy of the post-selected center state on the M = 3 ring: five
// probe angle vectors agreeing only in the weighted combination give
// indistinguishable outcomes (<= 1e-9), while different combinations are
// genuinely distinguishable at full success (> 1e-3).
Outcome criterion6() {
  const qnm::protocol::ProtocolConfig cfg = cycle_config(3, 0.2);
  const std::vector<std::map<int, double>> probes = {
      {{0, 0.2}, {1, 0.2}, {2, 0.2}},
      {{0, 0.6}, {1, 0.0}, {2, 0.0}},
      {{0, 0.0}, {1, 0.3}, {2, 0.3}},
      {{0, 0.5}, {1, 0.5}, {2, 0.5}},
      {{0, 0.1}, {1, 0.1}, {2, 1.3}},
  };
  const auto report = qnm::protocol::privacy_audit(cfg, probes);
  const bool pass = report.holds && report.group_count == 2 &&
                    report.partial_within_max <= 1e-9 &&
                    report.full_within_max <= 1e-9 &&
                    report.full_cross_min > 1e-3;
  return {pass, fmt("%d probes in %d combination groups: within-group "
                    "distance %.3e (<=1e-9), cross-group control %.3e "
                    "(>1e-3), trace spread %.3e",
                    static_cast<int>(probes.size()), report.group_count,
                    std::max(report.partial_within_max,
                             report.full_within_max),
                    report.full_cross_min, report.max_trace_spread)};
}

// 7. The transverse-field comparison reproduces the frozen closed-form
// values at eps = 0, 0.1, 0.8 for M = 10, and flags the large-eps
// reference only beyond its regime threshold.
Outcome criterion7() {
  struct Fixture {
    double eps, ours, small_ref, large_ref;
    bool flag;
  };
  const Fixture fixtures[] = {
      {0.0, 20.0, 10.0, 5.0, false},
      {0.1, 22.05, 10.125, 6.05, false},
      {0.8, 39.2, 18.0, 16.2, true},
  };
  double worst = 0.0;
  for (const auto& f : fixtures) {
    const auto cmp = qnm::witness::ising_bound_compare(10, f.eps);
    worst = std::max({worst, std::abs(cmp.ours - f.ours),
                      std::abs(cmp.reference_small_eps - f.small_ref),
                      std::abs(cmp.reference_large_eps - f.large_ref)});
    if (cmp.large_eps_in_regime != f.flag) {
      return {false, fmt("regime flag wrong at eps=%.1f", f.eps)};
    }
  }
  const bool pass = worst <= 1e-12;
  return {pass, fmt("eps in {0, 0.1, 0.8} at M=10: max deviation from "
                    "frozen values %.3e (<=1e-12), regime flags correct",
                    worst)};
}

// 8. Light cones: the exact conjugated support never exceeds the
// closed-form cap on 50 random brickwork chains (<= 10 sites, depth <= 3);
// the two-dimensional closed forms match at depth 1 and 2; and the shallow
// variance cap dominates the exact QFI on circuits of <= 8 sites.
Outcome criterion8() {
  std::mt19937_64 gen(808);
  int chain_ok = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int sites = 2 + static_cast<int>(gen() % 9);   // 2..10
    const int depth = static_cast<int>(gen() % 4);       // 0..3
    const auto spec = random_brickwork(sites, depth, gen);
    std::vector<qnm::witness::HamTerm> terms;
    for (int s = 0; s < sites; ++s) {
      terms.push_back({{s}, qnm::qcore::pauli_z()});
    }
    const int exact = qnm::witness::exact_lightcone_check(spec, terms);
    if (exact <= qnm::witness::light_cone_q(spec)) ++chain_ok;
  }

  qnm::witness::CircuitSpec lattice;
  lattice.geometry = qnm::witness::Geometry::kLattice2d;
  lattice.sites = 1;
  lattice.depth = 1;
  bool lattice_ok = qnm::witness::light_cone_q(lattice) == 5;
  lattice.depth = 2;
  lattice_ok = lattice_ok && qnm::witness::light_cone_q(lattice) == 13;

  int shallow_ok = 0;
  const int shallow_trials = 10;
  for (int trial = 0; trial < shallow_trials; ++trial) {
    const int sites = 2 + static_cast<int>(gen() % 7);  // 2..8
    const int depth = static_cast<int>(gen() % 3);      // 0..2
    const auto spec = random_brickwork(sites, depth, gen);
    std::vector<qnm::qcore::LabeledState> factors;
    std::vector<qnm::witness::HamTerm> terms;
    for (int s = 0; s < sites; ++s) {
      factors.push_back(qnm::qcore::LabeledState::pure(
          {qnm::qcore::QubitLabel::ancilla(s, 0)}, random_pure(2, gen)));
      terms.push_back({{s}, qnm::qcore::pauli_z()});
    }
    const auto sb = qnm::witness::shallow_qfi_bound(factors, spec, terms);
    if (sb.exact_qfi.has_value() && sb.bound + 1e-9 >= *sb.exact_qfi) {
      ++shallow_ok;
    }
  }

  const bool pass =
      chain_ok == 50 && lattice_ok && shallow_ok == shallow_trials;
  return {pass, fmt("%d/50 random chains within the closed-form cap, "
                    "two-dimensional caps %s, %d/%d shallow variance caps "
                    "dominate the exact value",
                    chain_ok, lattice_ok ? "exact" : "WRONG", shallow_ok,
                    shallow_trials)};
}

// 9. Scenario runner determinism: byte-identical reports on reruns of an
// exact scenario and of a seeded sampled scenario.
Outcome criterion9() {
  const fs::path scratch = fs::current_path() / "acceptance_scratch";
  fs::create_directories(scratch);

  const auto run_to = [&](const std::string& fixture_name,
                          const std::string& out_name) -> std::string {
    const fs::path out = scratch / out_name;
    fs::remove(out);
    const std::string cmd = std::string(QNM_CLI_PATH) + " --scenario \"" +
                            QNM_FIXTURE_DIR + "/" + fixture_name +
                            "\" --out \"" + out.string() +
                            "\" > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      throw std::runtime_error("scenario run failed: " + fixture_name);
    }
    std::ifstream in(out, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  const std::string exact_a = run_to("triangle_bound.json", "c9_exact_a.json");
  const std::string exact_b = run_to("triangle_bound.json", "c9_exact_b.json");
  const std::string samp_a = run_to("cycle3_sampled.json", "c9_samp_a.json");
  const std::string samp_b = run_to("cycle3_sampled.json", "c9_samp_b.json");

  const bool pass = !exact_a.empty() && exact_a == exact_b &&
                    !samp_a.empty() && samp_a == samp_b;
  return {pass, fmt("exact report %s (%zu bytes), seeded sampled report %s "
                    "(%zu bytes)",
                    exact_a == exact_b ? "byte-identical" : "DIFFERS",
                    exact_a.size(),
                    samp_a == samp_b ? "byte-identical" : "DIFFERS",
                    samp_a.size())};
}

}  // namespace

int main() {
  using Criterion = Outcome (*)();
  const Criterion criteria[] = {criterion1, criterion2, criterion3,
                                criterion4, criterion5, criterion6,
                                criterion7, criterion8, criterion9};
  bool all = true;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("unhandled exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s - %s\n", i + 1,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
    std::fflush(stdout);
    all = all && outcome.pass;
  }
  return all ? 0 : 1;
}
