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

#include "qnm/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "qnm/errors.hpp"

namespace qnm::netgraph {

Hypergraph::Hypergraph(int vertex_count, std::vector<std::vector<int>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 0) {
    throw InvalidGraph("vertex count must be non-negative");
  }
  std::set<std::vector<int>> seen;
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InvalidGraph("hyperedge repeats a vertex");
    }
    if (e.size() < 2) {
      throw InvalidGraph("hyperedge needs at least two vertices");
    }
    for (int v : e) {
      if (!contains_vertex(v)) {
        throw UnknownVertex("hyperedge vertex " + std::to_string(v) +
                            " outside 0.." + std::to_string(vertex_count_ - 1));
      }
    }
    if (!seen.insert(e).second) {
      throw InvalidGraph("duplicate hyperedge");
    }
  }
  incident_.assign(static_cast<std::size_t>(vertex_count_), {});
  for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
    for (int v : edges_[ei]) {
      incident_[static_cast<std::size_t>(v)].push_back(static_cast<int>(ei));
    }
  }
}

const std::vector<int>& Hypergraph::edge(int e) const {
  if (e < 0 || e >= edge_count()) {
    throw InvalidGraph("edge index " + std::to_string(e) + " out of range");
  }
  return edges_[static_cast<std::size_t>(e)];
}

const std::vector<int>& Hypergraph::incident_edges(int v) const {
  if (!contains_vertex(v)) {
    throw UnknownVertex("vertex " + std::to_string(v) + " outside 0.." +
                        std::to_string(vertex_count_ - 1));
  }
  return incident_[static_cast<std::size_t>(v)];
}

int Hypergraph::degree(int v) const {
  return static_cast<int>(incident_edges(v).size());
}

int Hypergraph::qubit_count() const {
  int n = 0;
  for (const auto& e : edges_) n += static_cast<int>(e.size());
  return n;
}

bool Hypergraph::is_connected() const {
  if (vertex_count_ <= 1) return true;
  // Breadth-first search over the vertex-edge incidence structure.
  std::vector<char> vertex_seen(static_cast<std::size_t>(vertex_count_), 0);
  std::vector<char> edge_seen(edges_.size(), 0);
  std::vector<int> queue{0};
  vertex_seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (int ei : incident_[static_cast<std::size_t>(v)]) {
      if (edge_seen[static_cast<std::size_t>(ei)]) continue;
      edge_seen[static_cast<std::size_t>(ei)] = 1;
      for (int w : edges_[static_cast<std::size_t>(ei)]) {
        if (!vertex_seen[static_cast<std::size_t>(w)]) {
          vertex_seen[static_cast<std::size_t>(w)] = 1;
          ++reached;
          queue.push_back(w);
        }
      }
    }
  }
  return reached == vertex_count_;
}

bool Hypergraph::is_cut_vertex(int v) const {
  if (!contains_vertex(v)) {
    throw UnknownVertex("vertex " + std::to_string(v) + " outside 0.." +
                        std::to_string(vertex_count_ - 1));
  }
  // Delete v; shrink incident edges, dropping residuals below two members.
  // Remaining vertices are relabeled densely to satisfy the constructor.
  std::vector<int> relabel(static_cast<std::size_t>(vertex_count_), -1);
  int next = 0;
  for (int w = 0; w < vertex_count_; ++w) {
    if (w != v) relabel[static_cast<std::size_t>(w)] = next++;
  }
  std::vector<std::vector<int>> reduced;
  std::set<std::vector<int>> seen;
  for (const auto& e : edges_) {
    std::vector<int> re;
    for (int w : e) {
      if (w != v) re.push_back(relabel[static_cast<std::size_t>(w)]);
    }
    if (re.size() >= 2 && seen.insert(re).second) {
      reduced.push_back(std::move(re));
    }
  }
  const Hypergraph rest(vertex_count_ - 1, std::move(reduced));
  return !rest.is_connected();
}

void SignalLayout::validate(const Hypergraph& g) const {
  if (signals.empty()) {
    throw InvalidGraph("signal layout needs at least one signal");
  }
  if (weights.size() != signals.size()) {
    throw InvalidGraph("weight vector length " +
                       std::to_string(weights.size()) +
                       " does not match signal count " +
                       std::to_string(signals.size()));
  }
  if (!generators.empty() && generators.size() != signals.size()) {
    throw InvalidGraph("generator list length does not match signal count");
  }
  for (const auto& s : signals) {
    if (s.empty()) throw InvalidGraph("empty signal subset");
    std::set<int> seen;
    for (int v : s) {
      if (!g.contains_vertex(v)) {
        throw UnknownVertex("signal vertex " + std::to_string(v) +
                            " outside the graph");
      }
      if (!seen.insert(v).second) {
        throw InvalidGraph("signal subset repeats a vertex");
      }
    }
  }
}

namespace {

bool intersects(const std::vector<int>& sorted_edge,
                const std::vector<int>& subset) {
  for (int v : subset) {
    if (std::binary_search(sorted_edge.begin(), sorted_edge.end(), v)) {
      return true;
    }
  }
  return false;
}

}  // namespace

int influence(const Hypergraph& g, const SignalLayout& layout, int s) {
  layout.validate(g);
  if (s < 0 || s >= layout.signal_count()) {
    throw InvalidGraph("signal index " + std::to_string(s) + " out of range");
  }
  const auto& subset = layout.signals[static_cast<std::size_t>(s)];
  int best = 0;
  bool touched = false;
  for (const auto& e : g.edges()) {
    if (!intersects(e, subset)) continue;
    touched = true;
    int count = 0;
    for (const auto& t : layout.signals) {
      if (intersects(e, t)) ++count;
    }
    best = std::max(best, count);
  }
  if (!touched) {
    throw NoIncidentEdge("signal " + std::to_string(s) +
                         " touches no hyperedge");
  }
  return best;
}

InfluenceValue influence_or_isolated(const Hypergraph& g,
                                     const SignalLayout& layout, int s) {
  try {
    return {influence(g, layout, s), false};
  } catch (const NoIncidentEdge&) {
    return {1, true};
  }
}

int max_influence(const Hypergraph& g, const SignalLayout& layout) {
  layout.validate(g);
  int best = 0;
  for (int s = 0; s < layout.signal_count(); ++s) {
    best = std::max(best, influence(g, layout, s));
  }
  return best;
}

}  // namespace qnm::netgraph
