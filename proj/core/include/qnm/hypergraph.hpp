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

#ifndef QNM_HYPERGRAPH_HPP_
#define QNM_HYPERGRAPH_HPP_

#include <vector>

#include "qnm/labels.hpp"

namespace qnm::netgraph {

// A finite hypergraph over vertices {0, ..., vertex_count-1}.  Every
// hyperedge is a set of at least two distinct vertices, and no two
// hyperedges are equal as sets.  Edges keep their construction order; the
// edge index is the identity used by qubit labels "[e,v]".
class Hypergraph {
 public:
  // The empty graph (no vertices, no edges).
  Hypergraph() = default;

  // Validates and normalizes (sorts each edge's vertex list).
  // Throws InvalidGraph / UnknownVertex on structural violations.
  Hypergraph(int vertex_count, std::vector<std::vector<int>> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  const std::vector<int>& edge(int e) const;

  // Indices of hyperedges containing v, ascending.  Throws UnknownVertex.
  const std::vector<int>& incident_edges(int v) const;

  // Number of hyperedges containing v (written c_v in certificates).
  int degree(int v) const;

  // Total number of source qubits, sum over edges of |e|.
  int qubit_count() const;

  bool contains_vertex(int v) const {
    return v >= 0 && v < vertex_count_;
  }

  // True if every pair of vertices is linked by a chain of hyperedges.
  // The empty graph and single-vertex graphs count as connected.
  bool is_connected() const;

  // True if deleting v (and shrinking incident edges, dropping any that
  // fall below two members) disconnects the remaining vertices.
  // Throws UnknownVertex.
  bool is_cut_vertex(int v) const;

 private:
  int vertex_count_ = 0;
  std::vector<std::vector<int>> edges_;
  std::vector<std::vector<int>> incident_;  // vertex -> edge indices
};

// The estimation problem layered on a hypergraph: which vertex subsets
// carry signals, their linear-combination weights, and (optionally) the
// explicit generator observables.
struct SignalLayout {
  std::vector<std::vector<int>> signals;     // non-empty vertex subsets
  std::vector<double> weights;               // one weight per signal
  std::vector<qcore::Observable> generators; // empty, or one per signal

  int signal_count() const { return static_cast<int>(signals.size()); }

  // Structural checks against g.  Throws InvalidGraph / UnknownVertex.
  void validate(const Hypergraph& g) const;
};

// Influence of signal s: the largest, over hyperedges e touching the
// signal's vertex set, number of signals that also touch e.  Throws
// NoIncidentEdge if no hyperedge meets the signal's vertices.
int influence(const Hypergraph& g, const SignalLayout& layout, int s);

struct InfluenceValue {
  int k = 1;
  bool isolated = false;  // true when the signal touched no hyperedge
};

// Same as influence(), but an isolated signal yields k=1 with a flag
// instead of an error (the fallback used by bound computations).
InfluenceValue influence_or_isolated(const Hypergraph& g,
                                     const SignalLayout& layout, int s);

// max_s influence(s).  Propagates NoIncidentEdge.
int max_influence(const Hypergraph& g, const SignalLayout& layout);

}  // namespace qnm::netgraph

#endif  // QNM_HYPERGRAPH_HPP_
