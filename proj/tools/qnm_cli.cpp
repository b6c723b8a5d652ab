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
// Scenario-driven command-line front end.
//
//   qnm --scenario cfg.json [--out report.csv] [--format json|csv]
//       [--seed N] [--shots N] [--sweep key=start:stop:step]
//
// The scenario file is {"kind": ..., "payload": {...}, "output": {...}}
// with kind one of bound | protocol | witness | lightcone | decompose.
// Exit codes: 0 success, 2 validation error, 3 computation infeasible,
// 4 invariant violation (the report is still written as evidence).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnm/covariance.hpp"
#include "qnm/errors.hpp"
#include "qnm/hypergraph.hpp"
#include "qnm/json_io.hpp"
#include "qnm/network_state.hpp"
#include "qnm/protocol.hpp"
#include "qnm/qfi.hpp"
#include "qnm/state.hpp"
#include "qnm/tmatrix.hpp"
#include "qnm/tolerances.hpp"
#include "qnm/witness.hpp"

namespace {

using json = nlohmann::ordered_json;
using qnm::io::format_real;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitViolation = 4;

// One scenario evaluation: the full JSON record, the flat row for CSV
// tables, and whether an invariant was violated.
struct Report {
  json record;
  std::vector<std::pair<std::string, std::string>> row;
  bool violated = false;
};

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<long> shots;
};

void put(Report& r, const std::string& key, double v) {
  r.record[key] = v;
  r.row.emplace_back(key, format_real(v));
}
void put(Report& r, const std::string& key, long v) {
  r.record[key] = v;
  r.row.emplace_back(key, std::to_string(v));
}
void put(Report& r, const std::string& key, int v) {
  put(r, key, static_cast<long>(v));
}
void put(Report& r, const std::string& key, bool v) {
  r.record[key] = v;
  r.row.emplace_back(key, v ? "true" : "false");
}

json matrix_to_json(const qnm::qcore::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- cycle expansion ---------------------------------------------------------
//
// Payloads may say {"cycle": M} instead of explicit vertices/edges: the
// ring of M pair sources (a single pair when M = 2).

json expand_cycle(const json& payload) {
  json out = payload;
  if (!payload.contains("cycle")) return out;
  if (!payload["cycle"].is_number_integer()) {
    throw qnm::ParseError("\"cycle\" must be an integer vertex count");
  }
  const int m = payload["cycle"].get<int>();
  if (m < 2) throw qnm::ParseError("\"cycle\" needs at least two vertices");
  json vertices = json::array();
  for (int v = 0; v < m; ++v) vertices.push_back(v);
  json edges = json::array();
  if (m == 2) {
    edges.push_back(json::array({0, 1}));
  } else {
    for (int v = 0; v < m; ++v) {
      edges.push_back(json::array({v, (v + 1) % m}));
    }
  }
  out.erase("cycle");
  out["vertices"] = std::move(vertices);
  out["edges"] = std::move(edges);
  return out;
}

// Protocol payloads additionally default center/alpha/theta for cycles.
json expand_protocol(const json& payload) {
  json out = expand_cycle(payload);
  if (!out.contains("center")) out["center"] = 0;
  const int k = static_cast<int>(out["vertices"].size());
  if (!out.contains("alpha")) {
    json alpha = json::object();
    for (int v = 0; v < k; ++v) alpha[std::to_string(v)] = 1;
    out["alpha"] = std::move(alpha);
  }
  if (!out.contains("theta")) {
    if (!out.contains("theta_fill")) {
      throw qnm::ParseError(
          "protocol payload needs \"theta\" or \"theta_fill\"");
    }
    const double fill = out["theta_fill"].get<double>();
    json theta = json::object();
    for (int v = 0; v < k; ++v) theta[std::to_string(v)] = fill;
    out["theta"] = std::move(theta);
  }
  out.erase("theta_fill");
  return out;
}

// ---- kind handlers -------------------------------------------------------------

Report run_bound(const json& payload, const Options&) {
  const json expanded = expand_cycle(payload);
  const auto scenario = qnm::io::parse_bound_scenario(expanded.dump());
  qnm::qcore::LabeledState rho =
      scenario.mixing.empty()
          ? qnm::qcore::assemble_network_state(qnm::qcore::NetworkDescription{
                scenario.g, scenario.sources, scenario.channels})
          : qnm::qcore::assemble_network_mixture(scenario.g, scenario.sources,
                                                 scenario.mixing);

  const auto cert =
      qnm::metro::verify_qfi_bound(scenario.g, scenario.layout, rho);
  const double bound = qnm::metro::mse_lower_bound(scenario.g, scenario.layout,
                                                   rho, scenario.nu);
  const auto qfi = qnm::metro::qfi_matrix(rho, scenario.layout.generators);
  const auto crb =
      qnm::metro::matrix_crb(qfi, scenario.nu, scenario.layout.weights);

  Report r;
  if (payload.contains("cycle")) {
    put(r, "cycle", payload["cycle"].get<long>());
  }
  put(r, "qubits", rho.qubit_count());
  put(r, "nu", scenario.nu);
  put(r, "bound", bound);
  put(r, "matrix_crb", crb.value);
  put(r, "crb_pseudo_inverse", crb.used_pseudo_inverse);
  put(r, "qfi_trace", cert.qfi_trace);
  put(r, "gap_min_eig", cert.gap_min_eig);
  put(r, "holds", cert.holds);
  r.record["k_values"] = cert.k_values;
  r.record["isolated"] = cert.isolated;
  r.record["variances"] = cert.variances;
  r.violated = !cert.holds;
  return r;
}

Report run_protocol(const json& payload, const Options& opt) {
  json expanded = expand_protocol(payload);

  // Seed/shot flags force or override sampled mode.
  if (opt.shots || opt.seed) {
    json mode = expanded.contains("mode") ? expanded["mode"] : json::object();
    if (opt.shots) {
      mode["kind"] = "sampled";
      mode["shots"] = *opt.shots;
    }
    if (opt.seed) mode["seed"] = *opt.seed;
    expanded["mode"] = std::move(mode);
  }

  // Privacy audit when probes are given.
  if (expanded.contains("probes")) {
    const auto probes =
        qnm::io::parse_theta_probes(expanded["probes"].dump());
    json cfg_json = expanded;
    cfg_json.erase("probes");
    const auto cfg = qnm::io::parse_protocol_config(cfg_json.dump());
    const auto audit = qnm::protocol::privacy_audit(cfg, probes);
    Report r;
    put(r, "group_count", audit.group_count);
    put(r, "partial_within_max", audit.partial_within_max);
    put(r, "full_within_max", audit.full_within_max);
    put(r, "full_cross_min", audit.full_cross_min);
    put(r, "max_trace_spread", audit.max_trace_spread);
    put(r, "holds", audit.holds);
    json cases = json::array();
    for (const auto& c : audit.cases) {
      json jc;
      jc["subset"] = c.subset;
      jc["within_group_max"] = c.within_group_max;
      jc["cross_group_max"] = c.cross_group_max;
      jc["trace_spread"] = c.trace_spread;
      cases.push_back(std::move(jc));
    }
    r.record["cases"] = std::move(cases);
    r.violated = !audit.holds;
    return r;
  }

  const auto cfg = qnm::io::parse_protocol_config(expanded.dump());

  if (cfg.sampled) {
    const auto trace = qnm::protocol::run_sampled(cfg);
    Report r;
    if (payload.contains("cycle")) {
      put(r, "cycle", payload["cycle"].get<long>());
    }
    put(r, "shots", trace.shots);
    put(r, "all_success_count", trace.all_success_count);
    put(r, "center_ghz_count", trace.center_ghz_count);
    put(r, "conditional_frequency", trace.conditional_frequency);
    put(r, "success_bound", qnm::protocol::success_prob_lower_bound(cfg));
    for (const auto& [v, count] : trace.first_failure_counts) {
      put(r, "first_failure_" + std::to_string(v), count);
    }
    return r;
  }

  const auto trace = qnm::protocol::run_exact(cfg);
  Report r;
  if (payload.contains("cycle")) {
    put(r, "cycle", payload["cycle"].get<long>());
  }
  put(r, "qubits", cfg.qubit_count());
  put(r, "all_success_probability", trace.all_success_probability);
  put(r, "success_bound", qnm::protocol::success_prob_lower_bound(cfg));
  put(r, "equality_expected", trace.equality_expected);
  put(r, "center_ghz_probability", trace.center_ghz_probability);
  put(r, "predicted_center_probability", trace.predicted_center_probability);
  put(r, "phase_sum", trace.phase_sum);
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json js;
    js["vertex"] = s.vertex;
    js["success_probability"] = s.success_probability;
    js["n_v"] = s.n_v;
    js["distinct_clusters"] = s.distinct_clusters;
    steps.push_back(std::move(js));
  }
  r.record["steps"] = std::move(steps);
  try {
    const auto fi = qnm::protocol::fisher_information_of_estimate(cfg);
    put(r, "fi", fi.fi);
    put(r, "theta_alpha", fi.theta_alpha);
  } catch (const qnm::DegenerateP&) {
    r.record["fi"] = nullptr;
    r.row.emplace_back("fi", "");
  }
  return r;
}

Report run_witness(const json& payload, const Options&) {
  const std::string model = payload.at("model").get<std::string>();
  Report r;
  if (model == "ising") {
    const int m = payload.at("M").get<int>();
    const double eps = payload.at("eps").get<double>();
    const int rr = payload.contains("r") ? payload["r"].get<int>() : 1;
    const auto cmp = qnm::witness::ising_bound_compare(m, eps, rr);
    put(r, "M", m);
    put(r, "r", rr);
    put(r, "eps", eps);
    put(r, "ours", cmp.ours);
    put(r, "reference_small_eps", cmp.reference_small_eps);
    put(r, "reference_large_eps", cmp.reference_large_eps);
    put(r, "eps_critical", cmp.eps_critical);
    put(r, "large_eps_in_regime", cmp.large_eps_in_regime);
    return r;
  }
  if (model == "spin_chain") {
    qnm::witness::SpinChainSpec spec;
    spec.M = payload.at("M").get<int>();
    if (payload.contains("r")) spec.r = payload["r"].get<int>();
    if (payload.contains("nu")) spec.nu = payload["nu"].get<int>();
    if (payload.contains("tau")) spec.tau = payload["tau"].get<int>();
    const auto load = [&](const char* key, std::vector<double>& dst,
                          double fallback) {
      if (!payload.contains(key)) {
        dst = {fallback};
      } else if (payload[key].is_array()) {
        dst = payload[key].get<std::vector<double>>();
      } else {
        dst = {payload[key].get<double>()};
      }
    };
    load("variance", spec.variances, 0.25);
    load("alpha", spec.alpha, 1.0 / spec.M);
    const double bound = qnm::witness::spin_chain_mse_bound(spec);
    put(r, "M", spec.M);
    put(r, "r", spec.r);
    put(r, "nu", spec.nu);
    put(r, "tau", spec.tau);
    put(r, "bound", bound);
    return r;
  }
  throw qnm::ParseError("unknown witness model \"" + model + "\"");
}

// Deterministic Haar-like random unitary (QR of a seeded Ginibre draw).
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
  const qnm::qcore::Matrix rmat =
      qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const auto d = rmat(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

// Random brickwork chain: odd layers gate (0,1)(2,3)..., even layers
// (1,2)(3,4)..., all gates Haar-random two-qubit unitaries.
qnm::witness::CircuitSpec random_brickwork(int sites, int depth,
                                           std::uint64_t seed) {
  std::mt19937_64 gen(seed);
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

Report run_lightcone(const json& payload, const Options& opt) {
  qnm::witness::CircuitSpec spec;
  const std::string geometry =
      payload.contains("geometry") ? payload["geometry"].get<std::string>()
                                   : "chain";
  if (geometry == "chain") {
    spec.geometry = qnm::witness::Geometry::kChain1d;
  } else if (geometry == "lattice2d") {
    spec.geometry = qnm::witness::Geometry::kLattice2d;
  } else if (geometry == "generic") {
    spec.geometry = qnm::witness::Geometry::kGeneric;
  } else {
    throw qnm::ParseError("unknown geometry \"" + geometry + "\"");
  }
  spec.depth = payload.at("depth").get<int>();
  spec.sites = payload.contains("sites") ? payload["sites"].get<int>() : 1;
  if (payload.contains("gate_locality")) {
    spec.gate_locality = payload["gate_locality"].get<int>();
  }
  if (payload.contains("ham_locality")) {
    spec.ham_locality = payload["ham_locality"].get<int>();
  }

  Report r;
  r.record["geometry"] = geometry;
  r.row.emplace_back("geometry", geometry);
  put(r, "depth", spec.depth);
  const long q = qnm::witness::light_cone_q(spec);
  put(r, "q_bound", q);

  // With explicit sites on the chain, check the bound against a seeded
  // random brickwork circuit's exact conjugated supports.
  if (spec.geometry == qnm::witness::Geometry::kChain1d &&
      payload.contains("sites")) {
    const int sites = payload["sites"].get<int>();
    const std::uint64_t seed =
        opt.seed ? *opt.seed
                 : (payload.contains("seed")
                        ? payload["seed"].get<std::uint64_t>()
                        : 1);
    const auto circuit = random_brickwork(sites, spec.depth, seed);
    std::vector<qnm::witness::HamTerm> terms;
    for (int s = 0; s < sites; ++s) {
      terms.push_back({{s}, qnm::qcore::pauli_z()});
    }
    const int exact = qnm::witness::exact_lightcone_check(circuit, terms);
    put(r, "sites", sites);
    put(r, "exact_max_support", exact);
    const bool ok = exact <= q;
    put(r, "within_bound", ok);
    r.violated = !ok;
  }
  return r;
}

Report run_decompose(const json& payload, const Options&) {
  const std::string mode = payload.at("mode").get<std::string>();
  json expanded = expand_cycle(payload);
  expanded.erase("mode");
  const auto scenario = qnm::io::parse_bound_scenario(expanded.dump());
  Report r;

  if (mode == "cov") {
    // Split the covariance of the standard generators across the source
    // factors of the (channel-free) network product state.
    const auto decomp = qnm::metro::cov_decompose(
        scenario.sources, scenario.layout.generators);
    double worst_min_eig = 0.0;
    json parts = json::array();
    qnm::qcore::Matrix sum = qnm::qcore::Matrix::Zero(
        decomp.total.matrix.rows(), decomp.total.matrix.cols());
    for (std::size_t k = 0; k < decomp.parts.size(); ++k) {
      const auto& part = decomp.parts[k];
      const qnm::qcore::Matrix herm = (part + part.adjoint()) / 2.0;
      const double min_eig = qnm::qcore::min_eigenvalue(herm);
      worst_min_eig = std::min(worst_min_eig, min_eig);
      sum += part;
      json jp;
      jp["subsystem"] = k;
      jp["min_eig"] = min_eig;
      jp["psd"] = min_eig >= qnm::tolerances().decomposition_psd;
      jp["matrix"] = matrix_to_json(part);
      parts.push_back(std::move(jp));
    }
    const double residual = (sum - decomp.total.matrix).cwiseAbs().maxCoeff();
    put(r, "subsystems", static_cast<long>(decomp.parts.size()));
    put(r, "signals", decomp.total.size());
    put(r, "sum_residual", residual);
    put(r, "worst_min_eig", worst_min_eig);
    const bool holds =
        residual <= qnm::tolerances().decomposition_sum &&
        worst_min_eig >= qnm::tolerances().decomposition_psd;
    put(r, "holds", holds);
    r.record["parts"] = std::move(parts);
    r.violated = !holds;
    return r;
  }

  if (mode == "certificate") {
    const qnm::qcore::NetworkDescription desc{scenario.g, scenario.sources,
                                              scenario.channels};
    const auto t = qnm::metro::t_decompose(desc, scenario.layout);
    const auto report = qnm::metro::verify_t_decomposition(t, desc,
                                                           scenario.layout);
    put(r, "edges", static_cast<long>(t.parts.size()));
    put(r, "sum_vs_qfi_min_eig", report.sum_vs_qfi_min_eig);
    put(r, "diag_residual_max", report.diag_residual_max);
    put(r, "block_leak_max", report.block_leak_max);
    put(r, "part_min_eig", report.part_min_eig);
    put(r, "holds", report.holds);
    json parts = json::array();
    for (std::size_t e = 0; e < t.parts.size(); ++e) {
      json jp;
      jp["edge"] = e;
      jp["signals"] = t.blocks[e];
      jp["matrix"] = matrix_to_json(t.parts[e]);
      parts.push_back(std::move(jp));
    }
    r.record["parts"] = std::move(parts);
    r.violated = !report.holds;
    return r;
  }
  throw qnm::ParseError("unknown decompose mode \"" + mode + "\"");
}

Report run_kind(const std::string& kind, const json& payload,
                const Options& opt) {
  if (kind == "bound") return run_bound(payload, opt);
  if (kind == "protocol") return run_protocol(payload, opt);
  if (kind == "witness") return run_witness(payload, opt);
  if (kind == "lightcone") return run_lightcone(payload, opt);
  if (kind == "decompose") return run_decompose(payload, opt);
  throw qnm::ParseError("unknown scenario kind \"" + kind + "\"");
}

// ---- sweep orchestration ----------------------------------------------------------

struct Sweep {
  std::string key;
  std::vector<double> values;
};

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw qnm::ParseError("--sweep must look like key=start:stop:step");
  }
  Sweep sweep;
  sweep.key = text.substr(0, eq);
  const std::string grid = text.substr(eq + 1);
  double start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(grid);
  if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
      !in.eof()) {
    throw qnm::ParseError("--sweep must look like key=start:stop:step");
  }
  if (step <= 0 || stop < start) {
    throw qnm::ParseError("--sweep needs step > 0 and stop >= start");
  }
  for (double v = start; v <= stop + 1e-9; v += step) sweep.values.push_back(v);
  return sweep;
}

json sweep_value_to_json(double v) {
  const double rounded = std::round(v);
  if (std::abs(v - rounded) < 1e-9) return static_cast<long>(rounded);
  return v;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const std::vector<Report>& reports) {
  std::ostringstream out;
  const auto& header = reports.front().row;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << csv_escape(header[i].first);
  }
  out << "\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.row.size(); ++i) {
      out << (i ? "," : "") << csv_escape(r.row[i].second);
    }
    out << "\n";
  }
  return out.str();
}

// Least-squares slope of log(y) against log(x).
std::optional<double> loglog_slope(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) return std::nullopt;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum network metrology scenario runner"};
  std::string scenario_path;
  std::string out_path;
  std::string format;
  std::string sweep_text;
  std::uint64_t seed_flag = 0;
  long shots_flag = 0;
  app.add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "json|csv");
  app.add_option("--seed", seed_flag, "seed override for sampled modes");
  app.add_option("--shots", shots_flag, "shot-count override (forces sampling)");
  app.add_option("--sweep", sweep_text, "key=start:stop:step payload sweep");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    qnm::apply_tolerance_env();

    std::ifstream in(scenario_path);
    if (!in) {
      std::cerr << "cannot open scenario file: " << scenario_path << "\n";
      return kExitValidation;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    json scenario;
    try {
      scenario = json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
      throw qnm::ParseError(std::string("malformed scenario JSON: ") +
                            e.what());
    }
    if (!scenario.is_object()) {
      throw qnm::ParseError("the scenario root must be an object");
    }
    const std::string kind = scenario.at("kind").get<std::string>();
    if (!scenario.contains("payload") || !scenario["payload"].is_object()) {
      throw qnm::ParseError("the scenario needs an object \"payload\"");
    }
    const json payload = scenario["payload"];

    if (scenario.contains("output")) {
      const json& output = scenario["output"];
      if (out_path.empty() && output.contains("path")) {
        out_path = output["path"].get<std::string>();
      }
      if (format.empty() && output.contains("format")) {
        format = output["format"].get<std::string>();
      }
    }
    if (format.empty()) format = "json";
    if (format != "json" && format != "csv") {
      throw qnm::ParseError("--format must be json or csv");
    }

    Options opt;
    if (app.count("--seed")) opt.seed = seed_flag;
    if (app.count("--shots")) opt.shots = shots_flag;

    // Compute everything first; only then touch the output file.
    std::string rendered;
    bool violated = false;
    if (sweep_text.empty()) {
      Report report = run_kind(kind, payload, opt);
      violated = report.violated;
      rendered = format == "json" ? report.record.dump(2) + "\n"
                                  : to_csv({report});
    } else {
      const Sweep sweep = parse_sweep(sweep_text);
      std::vector<Report> reports;
      std::vector<double> xs;
      std::vector<double> fis;
      for (double value : sweep.values) {
        json point = payload;
        point[sweep.key] = sweep_value_to_json(value);
        Report report = run_kind(kind, point, opt);
        violated = violated || report.violated;
        if (kind == "protocol") {
          for (const auto& [key, text] : report.row) {
            if (key == "fi" && !text.empty()) {
              xs.push_back(value);
              fis.push_back(std::stod(text));
            }
          }
        }
        reports.push_back(std::move(report));
      }
      const auto slope = loglog_slope(xs, fis);
      if (slope) {
        for (auto& report : reports) {
          report.record["fi_loglog_slope"] = *slope;
          report.row.emplace_back("fi_loglog_slope", format_real(*slope));
        }
      }
      if (format == "json") {
        json doc;
        doc["sweep"] = sweep.key;
        doc["rows"] = json::array();
        for (auto& r : reports) doc["rows"].push_back(std::move(r.record));
        if (slope) doc["fi_loglog_slope"] = *slope;
        rendered = doc.dump(2) + "\n";
      } else {
        rendered = to_csv(reports);
      }
    }

    if (out_path.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
      if (!out) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return kExitValidation;
      }
      out << rendered;
    }
    return violated ? kExitViolation : kExitOk;
  } catch (const qnm::TooLarge& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const qnm::Error& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
