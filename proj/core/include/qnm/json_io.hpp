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

#ifndef QNM_JSON_IO_HPP_
#define QNM_JSON_IO_HPP_

#include <string>
#include <vector>

#include "qnm/hypergraph.hpp"
#include "qnm/network_state.hpp"
#include "qnm/protocol.hpp"
#include "qnm/witness.hpp"

namespace qnm::io {

// Formats a real with 12 significant digits ("%.12g"), the byte-stable
// output convention used by every report and table.
std::string format_real(double v);

// ---- network documents -------------------------------------------------------
//
// Wire format:
//   {"vertices": [0,...,K-1],
//    "edges":    [[v,...],...],
//    "signals":  [[v,...],...],   // optional; default: one singleton per vertex
//    "weights":  [w,...]}         // optional; default: 1/M each
// Vertex ids must be exactly 0..K-1.

struct NetworkDoc {
  netgraph::Hypergraph g;
  netgraph::SignalLayout layout;  // generators left empty
};

NetworkDoc parse_network(const std::string& json_text);
std::string network_to_json(const netgraph::Hypergraph& g,
                            const netgraph::SignalLayout& layout);

// ---- bound / decomposition scenarios -------------------------------------------
//
// Extends the network document with the state construction and the
// estimation weights:
//   "sources":    [{"edge": e, "kind": "ghz", "phase": 0.0}
//                  | {"edge": e, "amplitudes": [[re,im],...]}]   // default ghz
//   "channels":   [{"vertex": v, "kind": "depolarizing"|"dephasing", "p": x}
//                  | {"vertex": v, "kraus": [[[re,im],...],...]}]
//   "mixing":     [{"probability": p, "channels": [...]}]        // optional
//   "generators": {"kind": "local_z_half" | "local_z"}           // default z/2
//   "nu":         1

struct BoundScenario {
  netgraph::Hypergraph g;
  netgraph::SignalLayout layout;  // generators filled for the requested kind
  std::vector<qcore::LabeledState> sources;
  std::vector<qcore::VertexChannel> channels;  // single-branch channels
  std::vector<qcore::MixtureTerm> mixing;      // non-empty only if "mixing" given
  int nu = 1;
};

BoundScenario parse_bound_scenario(const std::string& json_text);

// ---- protocol configs -----------------------------------------------------------
//
// Extends the network document with:
//   "center": v, "alpha": {"v": int, ...}, "theta": {"v": float, ...},
//   "L": int, "mode": {"kind": "exact"} | {"kind":"sampled","seed":u,"shots":n}

protocol::ProtocolConfig parse_protocol_config(const std::string& json_text);

// Probe list for the privacy audit: [{"v": theta, ...}, ...].
std::vector<std::map<int, double>> parse_theta_probes(
    const std::string& json_text);

// ---- state debug dumps ------------------------------------------------------------

// {"register": ["[e,v]",...], "pure": bool,
//  "amplitudes": [[re,im],...]} or {"density": [[[re,im],...],...]}.
std::string state_debug_json(const qcore::LabeledState& s);

}  // namespace qnm::io

#endif  // QNM_JSON_IO_HPP_
