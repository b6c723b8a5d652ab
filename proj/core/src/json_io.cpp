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

#include "qnm/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qnm/errors.hpp"
#include "qnm/qfi.hpp"

namespace qnm::io {

namespace {

using json = nlohmann::ordered_json;
using qcore::LabeledState;
using qcore::Matrix;
using qcore::QubitLabel;
using qcore::Vector;

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

const json& member(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) {
    fail(std::string(what) + " must be an integer");
  }
  return j.get<int>();
}

double as_real(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

std::complex<double> as_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    fail(std::string(what) + " must be a [re, im] pair");
  }
  return {as_real(j[0], what), as_real(j[1], what)};
}

int key_as_vertex(const std::string& key) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size()) fail("vertex key \"" + key + "\" is not an integer");
  return v;
}

Matrix as_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    fail(std::string(what) + " must be a non-empty array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
      fail(std::string(what) + " rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = as_complex(j[r][c], what);
    }
  }
  return m;
}

// Parses the common network document part out of an already-parsed object.
NetworkDoc network_from(const json& j) {
  if (!j.is_object()) fail("the document root must be an object");
  const json& vertices = member(j, "vertices");
  if (!vertices.is_array() || vertices.empty()) {
    fail("\"vertices\" must be a non-empty array");
  }
  const int k = static_cast<int>(vertices.size());
  for (int i = 0; i < k; ++i) {
    if (as_int(vertices[i], "a vertex id") != i) {
      fail("\"vertices\" must be exactly [0, ..., K-1]");
    }
  }
  const json& edges = member(j, "edges");
  if (!edges.is_array()) fail("\"edges\" must be an array");
  std::vector<std::vector<int>> edge_list;
  for (const json& e : edges) {
    if (!e.is_array()) fail("every edge must be an array of vertex ids");
    std::vector<int> edge;
    for (const json& v : e) edge.push_back(as_int(v, "an edge member"));
    edge_list.push_back(std::move(edge));
  }
  netgraph::Hypergraph g(k, std::move(edge_list));

  netgraph::SignalLayout layout;
  if (j.contains("signals")) {
    const json& signals = j["signals"];
    if (!signals.is_array()) fail("\"signals\" must be an array");
    for (const json& s : signals) {
      if (!s.is_array()) fail("every signal must be an array of vertex ids");
      std::vector<int> signal;
      for (const json& v : s) signal.push_back(as_int(v, "a signal member"));
      layout.signals.push_back(std::move(signal));
    }
  } else {
    for (int v = 0; v < k; ++v) layout.signals.push_back({v});
  }
  const int m = layout.signal_count();
  if (j.contains("weights")) {
    const json& weights = j["weights"];
    if (!weights.is_array() || static_cast<int>(weights.size()) != m) {
      fail("\"weights\" must list one weight per signal");
    }
    for (const json& w : weights) {
      layout.weights.push_back(as_real(w, "a weight"));
    }
  } else {
    layout.weights.assign(m, 1.0 / m);
  }
  layout.validate(g);
  return NetworkDoc{std::move(g), std::move(layout)};
}

std::vector<QubitLabel> edge_register(const netgraph::Hypergraph& g, int e) {
  std::vector<QubitLabel> reg;
  for (int v : g.edge(e)) reg.push_back(QubitLabel::source(e, v));
  return reg;
}

std::vector<qcore::VertexChannel> channels_from(const netgraph::Hypergraph& g,
                                                const json& arr) {
  if (!arr.is_array()) fail("a channel list must be an array");
  std::vector<qcore::VertexChannel> out;
  for (const json& c : arr) {
    if (!c.is_object()) fail("every channel must be an object");
    const int v = as_int(member(c, "vertex"), "\"vertex\"");
    if (!g.contains_vertex(v)) fail("channel vertex is out of range");
    const int n = g.degree(v);
    std::vector<Matrix> kraus;
    if (c.contains("kraus")) {
      const json& ops = c["kraus"];
      if (!ops.is_array() || ops.empty()) {
        fail("\"kraus\" must be a non-empty array of matrices");
      }
      for (const json& op : ops) kraus.push_back(as_matrix(op, "a Kraus op"));
    } else {
      const std::string kind = member(c, "kind").get<std::string>();
      const double p = as_real(member(c, "p"), "\"p\"");
      if (kind == "depolarizing") {
        kraus = qcore::depolarizing_kraus(n, p);
      } else if (kind == "dephasing") {
        kraus = qcore::dephasing_kraus(n, p);
      } else {
        fail("unknown channel kind \"" + kind + "\"");
      }
    }
    out.push_back(qcore::VertexChannel{v, std::move(kraus)});
  }
  return out;
}

json complex_to_json(const std::complex<double>& z) {
  return json::array({z.real(), z.imag()});
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

NetworkDoc parse_network(const std::string& json_text) {
  return network_from(parse_text(json_text));
}

std::string network_to_json(const netgraph::Hypergraph& g,
                            const netgraph::SignalLayout& layout) {
  layout.validate(g);
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(v);
  j["edges"] = g.edges();
  j["signals"] = layout.signals;
  j["weights"] = layout.weights;
  return j.dump();
}

BoundScenario parse_bound_scenario(const std::string& json_text) {
  const json j = parse_text(json_text);
  NetworkDoc doc = network_from(j);
  BoundScenario out{std::move(doc.g), std::move(doc.layout), {}, {}, {}, 1};

  // Sources: default is a plain GHZ state on every hyperedge.
  std::map<int, LabeledState> by_edge;
  if (j.contains("sources")) {
    const json& sources = j["sources"];
    if (!sources.is_array()) fail("\"sources\" must be an array");
    for (const json& s : sources) {
      if (!s.is_object()) fail("every source must be an object");
      const int e = as_int(member(s, "edge"), "\"edge\"");
      if (e < 0 || e >= out.g.edge_count()) fail("source edge out of range");
      if (by_edge.count(e)) fail("duplicate source for one edge");
      const auto reg = edge_register(out.g, e);
      if (s.contains("amplitudes")) {
        const json& amps = s["amplitudes"];
        if (!amps.is_array()) fail("\"amplitudes\" must be an array");
        Vector a(static_cast<Eigen::Index>(amps.size()));
        for (Eigen::Index i = 0; i < a.size(); ++i) {
          a(i) = as_complex(amps[i], "an amplitude");
        }
        by_edge.emplace(e, LabeledState::pure(reg, a));
      } else {
        const std::string kind = member(s, "kind").get<std::string>();
        if (kind != "ghz") fail("unknown source kind \"" + kind + "\"");
        const double phase =
            s.contains("phase") ? as_real(s["phase"], "\"phase\"") : 0.0;
        by_edge.emplace(e, qcore::ghz_state(reg, phase));
      }
    }
    if (static_cast<int>(by_edge.size()) != out.g.edge_count()) {
      fail("\"sources\" must cover every hyperedge");
    }
  } else {
    for (int e = 0; e < out.g.edge_count(); ++e) {
      by_edge.emplace(e, qcore::ghz_state(edge_register(out.g, e)));
    }
  }
  for (int e = 0; e < out.g.edge_count(); ++e) {
    out.sources.push_back(by_edge.at(e));
  }

  const bool has_channels = j.contains("channels");
  const bool has_mixing = j.contains("mixing");
  if (has_channels && has_mixing) {
    fail("give either \"channels\" or \"mixing\", not both");
  }
  if (has_channels) {
    out.channels = channels_from(out.g, j["channels"]);
  }
  if (has_mixing) {
    const json& mixing = j["mixing"];
    if (!mixing.is_array() || mixing.empty()) {
      fail("\"mixing\" must be a non-empty array");
    }
    for (const json& term : mixing) {
      if (!term.is_object()) fail("every mixture term must be an object");
      qcore::MixtureTerm t;
      t.probability = as_real(member(term, "probability"), "\"probability\"");
      t.channels = channels_from(out.g, member(term, "channels"));
      out.mixing.push_back(std::move(t));
    }
  }

  double scale = 0.5;
  if (j.contains("generators")) {
    const json& gen = j["generators"];
    const std::string kind = member(gen, "kind").get<std::string>();
    if (kind == "local_z") {
      scale = 1.0;
    } else if (kind != "local_z_half") {
      fail("unknown generator kind \"" + kind + "\"");
    }
  }
  out.layout.generators = metro::standard_generators(out.g, out.layout, scale);

  if (j.contains("nu")) {
    out.nu = as_int(j["nu"], "\"nu\"");
    if (out.nu < 1) fail("\"nu\" must be at least 1");
  }
  return out;
}

protocol::ProtocolConfig parse_protocol_config(const std::string& json_text) {
  const json j = parse_text(json_text);
  NetworkDoc doc = network_from(j);
  protocol::ProtocolConfig cfg;
  cfg.g = std::move(doc.g);
  cfg.center = as_int(member(j, "center"), "\"center\"");

  const json& alpha = member(j, "alpha");
  if (!alpha.is_object()) fail("\"alpha\" must map vertices to integers");
  for (const auto& [key, value] : alpha.items()) {
    cfg.alpha[key_as_vertex(key)] = as_int(value, "a weight");
  }
  const json& theta = member(j, "theta");
  if (!theta.is_object()) fail("\"theta\" must map vertices to angles");
  for (const auto& [key, value] : theta.items()) {
    cfg.theta[key_as_vertex(key)] = as_real(value, "an angle");
  }

  if (j.contains("L")) {
    cfg.L = as_int(j["L"], "\"L\"");
  } else {
    cfg.L = 1;
    for (const auto& [v, a] : cfg.alpha) {
      (void)v;
      cfg.L = std::max(cfg.L, std::abs(a));
    }
  }

  if (j.contains("mode")) {
    const json& mode = j["mode"];
    const std::string kind = member(mode, "kind").get<std::string>();
    if (kind == "sampled") {
      protocol::SampledMode sm;
      const json& seed = member(mode, "seed");
      if (!seed.is_number_integer() && !seed.is_number_unsigned()) {
        fail("\"seed\" must be an integer");
      }
      sm.seed = seed.get<std::uint64_t>();
      sm.shots = member(mode, "shots").get<long>();
      if (!mode["shots"].is_number_integer()) {
        fail("\"shots\" must be an integer");
      }
      cfg.sampled = sm;
    } else if (kind != "exact") {
      fail("unknown protocol mode \"" + kind + "\"");
    }
  }
  return cfg;
}

std::vector<std::map<int, double>> parse_theta_probes(
    const std::string& json_text) {
  const json j = parse_text(json_text);
  if (!j.is_array()) fail("the probe list must be an array");
  std::vector<std::map<int, double>> probes;
  for (const json& p : j) {
    if (!p.is_object()) fail("every probe must map vertices to angles");
    std::map<int, double> probe;
    for (const auto& [key, value] : p.items()) {
      probe[key_as_vertex(key)] = as_real(value, "an angle");
    }
    probes.push_back(std::move(probe));
  }
  return probes;
}

std::string state_debug_json(const LabeledState& s) {
  json j;
  j["register"] = json::array();
  for (const auto& q : s.reg()) j["register"].push_back(q.to_string());
  j["pure"] = s.is_pure();
  if (s.is_pure()) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
      amps.push_back(complex_to_json(s.amplitudes()(i)));
    }
    j["amplitudes"] = std::move(amps);
  } else {
    json rows = json::array();
    for (Eigen::Index r = 0; r < s.density().rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < s.density().cols(); ++c) {
        row.push_back(complex_to_json(s.density()(r, c)));
      }
      rows.push_back(std::move(row));
    }
    j["density"] = std::move(rows);
  }
  return j.dump();
}

}  // namespace qnm::io
