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

#ifndef QNM_LABELS_HPP_
#define QNM_LABELS_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnm::qcore {

// Identity of one qubit in a network register.
//
// Source qubits are written "[e,v]": the qubit that source (hyperedge) e
// distributed to vertex v.  Ancilla qubits are written "a(v,i)": the i-th
// locally prepared qubit at vertex v.
//
// The comparison order defines the canonical register order: all source
// qubits first, sorted by (edge index, vertex id), then all ancillas,
// sorted by (vertex id, slot).
struct QubitLabel {
  enum class Kind : std::uint8_t { kSource = 0, kAncilla = 1 };

  Kind kind = Kind::kSource;
  int a = 0;  // source: edge index;  ancilla: vertex id
  int b = 0;  // source: vertex id;   ancilla: slot

  static QubitLabel source(int edge, int vertex) {
    return QubitLabel{Kind::kSource, edge, vertex};
  }
  static QubitLabel ancilla(int vertex, int slot) {
    return QubitLabel{Kind::kAncilla, vertex, slot};
  }

  friend auto operator<=>(const QubitLabel&, const QubitLabel&) = default;

  std::string to_string() const;
  // Parses the to_string form ("[e,v]" or "a(v,i)").  Throws ParseError.
  static QubitLabel from_string(const std::string& text);
};

// A Hermitian operator with an explicit qubit support.  The matrix acts on
// the listed qubits with `support[0]` as the most significant bit of the
// matrix index.
struct Observable {
  std::vector<QubitLabel> support;
  Eigen::MatrixXcd matrix;

  int qubit_count() const { return static_cast<int>(support.size()); }

  // Checks that the support is duplicate-free, the matrix is square with
  // dimension 2^|support|, and the matrix is Hermitian within tolerance.
  // Throws LabelMismatch / SupportMismatch / BadDistribution.
  void validate() const;
};

// Same shape as Observable but without the hermiticity requirement; used for
// unitary gates and projectors (each with their own validation).
struct Gate {
  std::vector<QubitLabel> support;
  Eigen::MatrixXcd matrix;

  int qubit_count() const { return static_cast<int>(support.size()); }

  // Checks shape and unitarity within tolerance.
  void validate_unitary() const;
};

// A completely positive trace-preserving map with an explicit qubit support.
struct Channel {
  std::vector<QubitLabel> support;
  std::vector<Eigen::MatrixXcd> kraus;

  int qubit_count() const { return static_cast<int>(support.size()); }

  // Checks shapes and the completeness relation sum_k K^dagger K = 1.
  // Throws SupportMismatch / BadDistribution.
  void validate() const;

  bool is_identity() const;
};

// Throws LabelMismatch if `reg` contains duplicate labels.
void require_unique(const std::vector<QubitLabel>& reg);

// True if `reg` is sorted in canonical order and duplicate-free.
bool is_canonical(const std::vector<QubitLabel>& reg);

// Positions of `labels` within a canonically sorted register, in the order
// given.  Throws UnknownQubit on a missing label.
std::vector<int> positions_in(const std::vector<QubitLabel>& reg,
                              const std::vector<QubitLabel>& labels);

}  // namespace qnm::qcore

#endif  // QNM_LABELS_HPP_
