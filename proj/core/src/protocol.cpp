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

#include "qnm/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qnm/dense.hpp"
#include "qnm/errors.hpp"
#include "qnm/labels.hpp"
#include "qnm/tolerances.hpp"

namespace qnm::protocol {

namespace {

using qcore::LabeledState;
using qcore::Matrix;
using qcore::Observable;
using qcore::QubitLabel;
using qcore::Vector;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// One uniform in [0,1) from the top 53 bits of a single generator output,
// so the draw sequence is identical across standard libraries.
double uniform53(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Union-find over hyperedge indices; each root carries the phase its
// merged GHZ cluster has accumulated.
class EdgeClusters {
 public:
  explicit EdgeClusters(int edge_count)
      : parent_(edge_count), phase_(edge_count, 0.0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int e) {
    while (parent_[e] != e) {
      parent_[e] = parent_[parent_[e]];
      e = parent_[e];
    }
    return e;
  }

  double phase_of(int e) { return phase_[find(e)]; }

  // Merges the clusters of all given edges and adds `extra` to the merged
  // cluster's phase.
  void merge(const std::vector<int>& edges, double extra) {
    if (edges.empty()) return;
    int r = find(edges[0]);
    for (int e : edges) {
      const int s = find(e);
      if (s != r) {
        phase_[r] += phase_[s];
        parent_[s] = r;
      }
    }
    phase_[r] += extra;
  }

 private:
  std::vector<int> parent_;
  std::vector<double> phase_;
};

int weight_at(const ProtocolConfig& cfg, int v) {
  const auto it = cfg.alpha.find(v);
  if (it == cfg.alpha.end()) {
    throw UnknownVertex("alpha does not cover vertex " + std::to_string(v));
  }
  return it->second;
}

double angle_at(const std::map<int, double>& theta, int v) {
  const auto it = theta.find(v);
  if (it == theta.end()) {
    throw UnknownVertex("theta does not cover vertex " + std::to_string(v));
  }
  return it->second;
}

// Checks everything except connectivity and the cut-vertex condition (the
// recurrence bookkeeping is exactly the diagnostic for those).
void validate_weights_and_angles(const ProtocolConfig& cfg) {
  if (!cfg.g.contains_vertex(cfg.center)) {
    throw UnknownVertex("center vertex is not in the graph");
  }
  if (cfg.g.edge_count() < 1) {
    throw InvalidGraph("the protocol needs at least one GHZ source");
  }
  if (cfg.L < 1) {
    throw BadDistribution("the weight cap L must be at least 1");
  }
  for (const auto& [v, a] : cfg.alpha) {
    if (!cfg.g.contains_vertex(v)) {
      throw UnknownVertex("alpha names an unknown vertex");
    }
    if (a == 0) throw ZeroWeight("every protocol weight must be non-zero");
    if (std::abs(a) > cfg.L) {
      throw BadDistribution("a weight exceeds the cap L");
    }
  }
  for (const auto& [v, t] : cfg.theta) {
    (void)t;
    if (!cfg.g.contains_vertex(v)) {
      throw UnknownVertex("theta names an unknown vertex");
    }
  }
  for (int v = 0; v < cfg.g.vertex_count(); ++v) {
    (void)weight_at(cfg, v);
    (void)angle_at(cfg.theta, v);
  }
}

std::vector<int> non_center_vertices(const ProtocolConfig& cfg) {
  std::vector<int> out;
  for (int v = 0; v < cfg.g.vertex_count(); ++v) {
    if (v != cfg.center) out.push_back(v);
  }
  return out;
}

// Source qubits [e,v] plus local ancillas a(v,0..|alpha_v|-1), sorted
// canonically: exactly the qubits sensor v measures.
std::vector<QubitLabel> sensor_register(const ProtocolConfig& cfg, int v) {
  std::vector<QubitLabel> reg;
  for (int e : cfg.g.incident_edges(v)) reg.push_back(QubitLabel::source(e, v));
  const int a = std::abs(weight_at(cfg, v));
  for (int s = 0; s < a; ++s) reg.push_back(QubitLabel::ancilla(v, s));
  std::sort(reg.begin(), reg.end());
  return reg;
}

std::vector<QubitLabel> center_register(const ProtocolConfig& cfg) {
  std::vector<QubitLabel> reg;
  for (int e : cfg.g.incident_edges(cfg.center)) {
    reg.push_back(QubitLabel::source(e, cfg.center));
  }
  std::sort(reg.begin(), reg.end());
  return reg;
}

// |GHZ><GHZ| on n qubits.
Matrix ghz_projector(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector g = Vector::Zero(dim);
  g(0) = 1.0 / std::numbers::sqrt2;
  g(dim - 1) = 1.0 / std::numbers::sqrt2;
  return g * g.adjoint();
}

// Assembles the full pure signal state: one GHZ source per hyperedge and,
// at every non-center sensor, |alpha_v| phased plus states (X-conjugated
// for negative weights).  Optionally applies the center's own phase to its
// lowest-indexed source qubit.
LabeledState build_signal_state(const ProtocolConfig& cfg,
                                const std::map<int, double>& theta,
                                bool include_center_phase) {
  if (cfg.qubit_count() > qcore::kMaxPureQubits) {
    throw TooLarge("protocol instance exceeds the pure-state qubit cap");
  }
  LabeledState state =
      LabeledState::pure({}, Vector::Ones(1));
  for (int e = 0; e < cfg.g.edge_count(); ++e) {
    std::vector<QubitLabel> reg;
    for (int v : cfg.g.edge(e)) reg.push_back(QubitLabel::source(e, v));
    state = tensor(state, qcore::ghz_state(reg));
  }
  for (int v : non_center_vertices(cfg)) {
    const int a = std::abs(weight_at(cfg, v));
    for (int s = 0; s < a; ++s) {
      state = tensor(state, qcore::plus_state(QubitLabel::ancilla(v, s)));
    }
  }
  for (int v : non_center_vertices(cfg)) {
    const int alpha = weight_at(cfg, v);
    const double t = angle_at(theta, v);
    for (int s = 0; s < std::abs(alpha); ++s) {
      const QubitLabel q = QubitLabel::ancilla(v, s);
      state = apply_phase(state, q, t, +1);
      if (alpha < 0) state = apply_x(state, q);
    }
  }
  if (include_center_phase) {
    const int alpha = weight_at(cfg, cfg.center);
    const double t = angle_at(theta, cfg.center);
    const QubitLabel q = QubitLabel::source(
        cfg.g.incident_edges(cfg.center).front(), cfg.center);
    state = apply_phase(state, q, std::abs(alpha) * t, alpha < 0 ? -1 : +1);
  }
  return state;
}

}  // namespace

// ---- configuration ------------------------------------------------------------

void ProtocolConfig::validate() const {
  validate_weights_and_angles(*this);
  if (!g.is_connected()) {
    throw InvalidGraph("the protocol needs a connected graph");
  }
  if (g.is_cut_vertex(center)) {
    throw CutVertexCenter(
        "the center must not be a cut vertex: the post-selected clusters "
        "would never merge");
  }
  if (sampled && sampled->shots < 1) {
    throw BadDistribution("sampled mode needs a positive shot count");
  }
}

double ProtocolConfig::phase_sum() const {
  double sum = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    sum += weight_at(*this, v) * angle_at(theta, v);
  }
  return sum;
}

int ProtocolConfig::qubit_count() const {
  int n = g.qubit_count();
  for (const auto& [v, a] : alpha) {
    if (v != center) n += std::abs(a);
  }
  return n;
}

NormalizedWeights normalize_weights(
    const std::map<int, std::pair<long, long>>& raw) {
  if (raw.empty()) {
    throw BadDistribution("cannot normalize an empty weight map");
  }
  std::map<int, std::pair<long, long>> reduced;
  long l_tilde = 1;
  for (const auto& [v, frac] : raw) {
    auto [num, den] = frac;
    if (den == 0) throw BadDistribution("weight denominator is zero");
    if (num == 0) throw ZeroWeight("every protocol weight must be non-zero");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long g = std::gcd(std::abs(num), den);
    num /= g;
    den /= g;
    reduced[v] = {num, den};
    const long common = std::gcd(l_tilde, den);
    if (l_tilde / common > std::numeric_limits<long>::max() / den) {
      throw TooLarge("weight denominators overflow the common multiple");
    }
    l_tilde = l_tilde / common * den;
  }
  NormalizedWeights out;
  out.L_tilde = l_tilde;
  for (const auto& [v, frac] : reduced) {
    const long scale = l_tilde / frac.second;
    if (std::abs(frac.first) >
        static_cast<long>(std::numeric_limits<int>::max()) / scale) {
      throw TooLarge("a normalized weight overflows the integer range");
    }
    out.alpha[v] = static_cast<int>(frac.first * scale);
  }
  return out;
}

// ---- exact simulation -----------------------------------------------------------

ProtocolTrace run_exact(const ProtocolConfig& cfg) {
  cfg.validate();
  LabeledState state = build_signal_state(cfg, cfg.theta, false);

  EdgeClusters clusters(cfg.g.edge_count());
  ProtocolTrace trace;
  trace.all_success_probability = 1.0;
  for (int v : non_center_vertices(cfg)) {
    const std::vector<QubitLabel> measured = sensor_register(cfg, v);
    MeasurementStep step;
    step.vertex = v;
    step.n_v = static_cast<int>(measured.size());

    // Collision check: two measured source qubits in one merged cluster
    // break the exact 2^{-n_v} success probability.  The local plus states
    // are always fresh clusters of their own.
    const std::vector<int>& incident = cfg.g.incident_edges(v);
    std::set<int> roots;
    for (int e : incident) roots.insert(clusters.find(e));
    step.distinct_clusters = roots.size() == incident.size();

    const Observable projector{measured, ghz_projector(step.n_v)};
    const auto outcome = project_and_renormalize(state, projector);
    state = outcome.state;
    step.success_probability = outcome.probability;
    trace.all_success_probability *= outcome.probability;
    trace.equality_expected =
        trace.equality_expected && step.distinct_clusters;
    trace.steps.push_back(step);

    clusters.merge(incident, 0.0);
  }

  // The center's own phase, on its lowest-indexed source qubit.
  const int alpha_c = weight_at(cfg, cfg.center);
  const double theta_c = angle_at(cfg.theta, cfg.center);
  const QubitLabel center_q = QubitLabel::source(
      cfg.g.incident_edges(cfg.center).front(), cfg.center);
  state = apply_phase(state, center_q, std::abs(alpha_c) * theta_c,
                      alpha_c < 0 ? -1 : +1);

  const std::vector<QubitLabel> center_reg = center_register(cfg);
  const Observable center_projector{
      center_reg, ghz_projector(static_cast<int>(center_reg.size()))};
  trace.center_ghz_probability = expectation(state, center_projector);
  if (static_cast<int>(center_reg.size()) <= qcore::kMaxMixedQubits) {
    trace.center_state = partial_trace(state, center_reg);
  }
  trace.phase_sum = cfg.phase_sum();
  trace.predicted_center_probability =
      std::cos(trace.phase_sum / 2.0) * std::cos(trace.phase_sum / 2.0);
  return trace;
}

// ---- recurrence bookkeeping -------------------------------------------------------

std::vector<StepPrediction> signal_state_predict(const ProtocolConfig& cfg,
                                                 std::vector<int> order) {
  validate_weights_and_angles(cfg);
  const std::vector<int> sensors = non_center_vertices(cfg);
  const bool frontier_order = order.empty();
  if (!frontier_order) {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != sensors) {
      throw InvalidGraph(
          "measurement order must be a permutation of the non-center "
          "vertices");
    }
  }

  EdgeClusters clusters(cfg.g.edge_count());
  std::vector<bool> measured(cfg.g.vertex_count(), false);
  measured[cfg.center] = true;  // the center is never measured here
  std::vector<int> finished;
  std::vector<StepPrediction> steps;

  for (std::size_t k = 0; k < sensors.size(); ++k) {
    int v = -1;
    if (frontier_order) {
      if (k == 0) {
        v = sensors.front();
      } else {
        // Lowest unmeasured sensor holding a qubit of the current cluster.
        const int sig_root = clusters.find(
            cfg.g.incident_edges(finished.back()).front());
        for (int u : sensors) {
          if (measured[u]) continue;
          for (int e : cfg.g.incident_edges(u)) {
            if (clusters.find(e) == sig_root) {
              v = u;
              break;
            }
          }
          if (v >= 0) break;
        }
        if (v < 0) {
          throw NotConvergent(
              "no unmeasured sensor shares the signal cluster; the center "
              "separates the remaining sensors");
        }
      }
    } else {
      v = order[k];
    }

    measured[v] = true;
    finished.push_back(v);
    clusters.merge(cfg.g.incident_edges(v),
                   weight_at(cfg, v) * angle_at(cfg.theta, v));

    StepPrediction step;
    step.vertex = v;
    step.S = finished;
    std::sort(step.S.begin(), step.S.end());
    const int root = clusters.find(cfg.g.incident_edges(v).front());
    std::set<int> owners;
    for (int e = 0; e < cfg.g.edge_count(); ++e) {
      if (clusters.find(e) != root) continue;
      for (int u : cfg.g.edge(e)) {
        if (u == cfg.center || !measured[u]) {
          step.Q.push_back(QubitLabel::source(e, u));
          owners.insert(u);
        }
      }
    }
    std::sort(step.Q.begin(), step.Q.end());
    step.S_tilde.assign(owners.begin(), owners.end());
    step.phase = clusters.phase_of(root);
    steps.push_back(step);
  }

  // Terminal condition: one coherent cluster left, owned by the center
  // alone and covering all of its source qubits.
  const std::vector<int>& center_edges = cfg.g.incident_edges(cfg.center);
  if (center_edges.empty()) {
    throw NotConvergent("the center holds no source qubit");
  }
  std::set<int> center_roots;
  for (int e : center_edges) center_roots.insert(clusters.find(e));
  const bool converged =
      center_roots.size() == 1 && !steps.empty() &&
      steps.back().S_tilde == std::vector<int>{cfg.center} &&
      steps.back().Q == center_register(cfg);
  if (!converged) {
    throw NotConvergent(
        "the center's source qubits did not merge into a single coherent "
        "cluster (is the center a cut vertex?)");
  }
  return steps;
}

// ---- sampling -------------------------------------------------------------------

SampledTrace run_sampled(const ProtocolConfig& cfg) {
  cfg.validate();
  if (!cfg.sampled) {
    throw BadDistribution("sampled mode settings (seed, shots) are required");
  }
  const int n = cfg.qubit_count();
  // The center phase commutes with every sensor projector, so it can be
  // folded into the initial state.
  const LabeledState initial = build_signal_state(cfg, cfg.theta, true);
  const std::vector<int> sensors = non_center_vertices(cfg);
  const int s_count = static_cast<int>(sensors.size());
  if (s_count >= 62) throw TooLarge("too many sensors to key branch states");

  std::vector<std::vector<int>> positions(sensors.size());
  std::vector<Matrix> projectors(sensors.size());
  for (std::size_t k = 0; k < sensors.size(); ++k) {
    const auto reg = sensor_register(cfg, sensors[k]);
    positions[k] = initial.positions_of(reg);
    projectors[k] = ghz_projector(static_cast<int>(reg.size()));
  }
  const auto center_reg = center_register(cfg);
  const std::vector<int> center_positions = initial.positions_of(center_reg);
  const Matrix center_projector =
      ghz_projector(static_cast<int>(center_reg.size()));

  // Branch states are keyed heap-style: key 1 is the root, children are
  // (key<<1)|outcome.  Unnormalized projected vectors; only a bounded
  // number is cached, deeper branches are recomputed from their parents.
  constexpr std::size_t kMaxCachedBranches = 256;
  std::unordered_map<std::uint64_t, Vector> branch_cache;
  std::unordered_map<std::uint64_t, double> p_cache;

  std::function<Vector(std::uint64_t)> branch_state =
      [&](std::uint64_t key) -> Vector {
    if (key == 1) return initial.amplitudes();
    const auto it = branch_cache.find(key);
    if (it != branch_cache.end()) return it->second;
    const Vector parent = branch_state(key >> 1);
    const int k = std::bit_width(key) - 2;  // sensor decided at this level
    Vector success = qcore::apply_embedded(projectors[k], parent, n, positions[k]);
    Vector out = (key & 1) ? std::move(success) : Vector(parent - success);
    if (branch_cache.size() < kMaxCachedBranches) branch_cache[key] = out;
    return out;
  };
  const auto success_prob = [&](std::uint64_t key, int k) -> double {
    const auto it = p_cache.find(key);
    if (it != p_cache.end()) return it->second;
    const Vector phi = branch_state(key);
    const double norm2 = phi.squaredNorm();
    const Vector proj = qcore::apply_embedded(projectors[k], phi, n, positions[k]);
    const double p = norm2 > 0.0 ? proj.squaredNorm() / norm2 : 0.0;
    p_cache[key] = p;
    return p;
  };

  SampledTrace out;
  out.shots = cfg.sampled->shots;
  for (int v : sensors) out.first_failure_counts[v] = 0;

  double center_p = -1.0;
  for (long shot = 0; shot < cfg.sampled->shots; ++shot) {
    std::mt19937_64 gen(
        splitmix64(cfg.sampled->seed + static_cast<std::uint64_t>(shot)));
    std::uint64_t key = 1;
    int first_failure = -1;
    for (int k = 0; k < s_count; ++k) {
      const double p = success_prob(key, k);
      const bool success = uniform53(gen) < p;
      if (!success && first_failure < 0) first_failure = sensors[k];
      key = (key << 1) | static_cast<std::uint64_t>(success);
    }
    if (first_failure >= 0) {
      ++out.first_failure_counts[first_failure];
      continue;
    }
    ++out.all_success_count;
    if (center_p < 0.0) {
      const Vector leaf = branch_state(key);
      const Vector proj =
          qcore::apply_embedded(center_projector, leaf, n, center_positions);
      center_p = proj.squaredNorm() / leaf.squaredNorm();
    }
    if (uniform53(gen) < center_p) ++out.center_ghz_count;
  }
  out.conditional_frequency =
      out.all_success_count > 0
          ? static_cast<double>(out.center_ghz_count) /
                static_cast<double>(out.all_success_count)
          : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double success_prob_lower_bound(const ProtocolConfig& cfg) {
  cfg.validate();
  long exponent = 0;
  for (const auto& [v, a] : cfg.alpha) {
    if (v != cfg.center) exponent += std::abs(a);
  }
  exponent += cfg.g.qubit_count() - cfg.g.degree(cfg.center);
  return std::ldexp(1.0, static_cast<int>(-exponent));
}

// ---- Fisher information -----------------------------------------------------------

FisherEstimate fisher_information_of_estimate(const ProtocolConfig& cfg) {
  cfg.validate();
  double m = 0.0;
  double alpha_sq = 0.0;
  for (const auto& [v, a] : cfg.alpha) {
    (void)v;
    m += std::abs(a);
    alpha_sq += static_cast<double>(a) * a;
  }
  // Direction advancing theta(alpha) = phase_sum / M at unit rate.
  std::map<int, double> direction;
  for (const auto& [v, a] : cfg.alpha) direction[v] = m * a / alpha_sq;

  const auto probability_at = [&](double t) {
    ProtocolConfig shifted = cfg;
    for (auto& [v, theta_v] : shifted.theta) theta_v += t * direction[v];
    return run_exact(shifted).center_ghz_probability;
  };

  const double h = tolerances().fi_fd_step;
  const double p0 = probability_at(0.0);
  const double coarse = (probability_at(h) - probability_at(-h)) / (2.0 * h);
  const double fine =
      (probability_at(h / 2.0) - probability_at(-h / 2.0)) / h;
  const double refined = (4.0 * fine - coarse) / 3.0;

  const double denominator = p0 * (1.0 - p0);
  if (denominator < tolerances().degenerate_p) {
    throw DegenerateP(
        "the center outcome probability is degenerate at the evaluation "
        "point; the Fisher information quotient is undefined there");
  }
  FisherEstimate est;
  est.p = p0;
  est.dp = refined;
  est.richardson_defect = std::abs(fine - coarse);
  est.fi = refined * refined / denominator;
  est.theta_alpha = cfg.phase_sum() / m;
  return est;
}

// ---- privacy audit ----------------------------------------------------------------

PrivacyReport privacy_audit(const ProtocolConfig& cfg,
                            const std::vector<std::map<int, double>>& probes) {
  cfg.validate();
  if (probes.empty()) {
    throw BadDistribution("the privacy audit needs at least one probe");
  }
  const std::vector<int> sensors = non_center_vertices(cfg);
  if (sensors.size() > 12) {
    throw TooLarge("too many sensors for the outcome-subset sweep");
  }
  const int n = cfg.qubit_count();
  const std::size_t probe_count = probes.size();

  // Full signal states (center phase included) and combination values.
  std::vector<Vector> psi(probe_count);
  std::vector<double> combination(probe_count);
  std::optional<LabeledState> reference;
  for (std::size_t p = 0; p < probe_count; ++p) {
    ProtocolConfig probe_cfg = cfg;
    probe_cfg.theta = probes[p];
    validate_weights_and_angles(probe_cfg);
    const LabeledState state =
        build_signal_state(probe_cfg, probe_cfg.theta, true);
    psi[p] = state.amplitudes();
    combination[p] = probe_cfg.phase_sum();
    if (!reference) reference = state;
  }

  // Group probes by combination value.
  std::vector<std::size_t> order(probe_count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return combination[a] < combination[b];
  });
  std::vector<int> group(probe_count, 0);
  int group_count = 0;
  for (std::size_t i = 0; i < probe_count; ++i) {
    if (i > 0 && combination[order[i]] - combination[order[i - 1]] >
                     tolerances().phase_equality) {
      ++group_count;
    }
    group[order[i]] = group_count;
  }
  ++group_count;

  std::vector<std::vector<int>> positions(sensors.size());
  std::vector<Matrix> ghz(sensors.size());
  for (std::size_t k = 0; k < sensors.size(); ++k) {
    const auto reg = sensor_register(cfg, sensors[k]);
    positions[k] = reference->positions_of(reg);
    ghz[k] = ghz_projector(static_cast<int>(reg.size()));
  }
  const std::vector<int> center_positions =
      reference->positions_of(center_register(cfg));

  PrivacyReport report;
  report.group_count = group_count;
  double full_cross_min = std::numeric_limits<double>::infinity();
  bool any_cross = false;

  const std::uint64_t subset_count = std::uint64_t{1} << sensors.size();
  const std::uint64_t full_mask = subset_count - 1;
  for (std::uint64_t mask = 0; mask < subset_count; ++mask) {
    PrivacyCase pc;
    for (std::size_t k = 0; k < sensors.size(); ++k) {
      if (mask >> k & 1) pc.subset.push_back(sensors[k]);
    }
    std::vector<Matrix> rho(probe_count);
    std::vector<double> weight(probe_count);
    for (std::size_t p = 0; p < probe_count; ++p) {
      Vector phi = psi[p];
      for (std::size_t k = 0; k < sensors.size(); ++k) {
        const Matrix& g = ghz[k];
        const Matrix op =
            (mask >> k & 1)
                ? g
                : Matrix(Matrix::Identity(g.rows(), g.cols()) - g);
        phi = qcore::apply_embedded(op, phi, n, positions[k]);
      }
      rho[p] = qcore::ptrace_outer(phi, n, center_positions);
      weight[p] = rho[p].trace().real();
    }
    for (std::size_t i = 0; i < probe_count; ++i) {
      for (std::size_t j = i + 1; j < probe_count; ++j) {
        const double d = qcore::trace_distance(rho[i], rho[j]);
        if (group[i] == group[j]) {
          pc.within_group_max = std::max(pc.within_group_max, d);
        } else {
          pc.cross_group_max = std::max(pc.cross_group_max, d);
          if (mask == full_mask) {
            full_cross_min = std::min(full_cross_min, d);
            any_cross = true;
          }
        }
        pc.trace_spread =
            std::max(pc.trace_spread, std::abs(weight[i] - weight[j]));
      }
    }
    if (mask == full_mask) {
      report.full_within_max = pc.within_group_max;
    } else {
      report.partial_within_max =
          std::max(report.partial_within_max, pc.within_group_max);
    }
    report.max_trace_spread =
        std::max(report.max_trace_spread, pc.trace_spread);
    report.cases.push_back(std::move(pc));
  }
  report.full_cross_min = any_cross ? full_cross_min : 0.0;
  report.holds = report.partial_within_max <= tolerances().privacy_distance &&
                 report.full_within_max <= tolerances().privacy_distance &&
                 report.max_trace_spread <= tolerances().trace_spread;
  return report;
}

}  // namespace qnm::protocol
